#pragma once

#include "aspher/congruence.hpp"
#include "aspher/rational.hpp"
#include "aspher/stargraph.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aspher {

/// q·π, exact.
struct CurvatureValue {
    Rational q;

    std::string render() const;  // "-pi/3", "pi/6", "0", "2pi/3"
    bool operator==(const CurvatureValue &o) const { return q == o.q; }
    bool operator<(const CurvatureValue &o) const { return q < o.q; }
    bool operator<=(const CurvatureValue &o) const { return q <= o.q; }
};

/// (2 - n)π + Σ 2π/d_i. Throws std::invalid_argument on a degree below 2.
CurvatureValue curvature(std::span<const int> degrees);

/// Largest curvature over degree vectors of length n with `fixed2` corners of
/// degree 2, `extra` corners bounded below by the given values and every
/// other corner at least `min_rest`.
CurvatureValue curvature_bound(int n, int fixed2, int min_rest, std::span<const int> extra = {});

struct LabelClaim {
    enum class Expect { Admissible, Possible, Contradiction };
    std::size_t corner = 0;  // slot index of the corner in the relator
    std::string text;        // as written, e.g. "hd^-1i"
    bool partial = false;    // only a prefix of the label; the walk goes on
    Expect expect = Expect::Possible;
};

std::string expect_name(LabelClaim::Expect e);

struct RegionConfig {
    std::vector<int> degrees;  // lower bounds per corner, relator order
    std::vector<LabelClaim> labels;
};

struct CornerVerdict {
    enum class Status { Admissible, Possible, Contradiction, Malformed };
    std::size_t corner = 0;
    std::string label;
    Status status = Status::Malformed;
    bool reduced = true;
    WordClass cls;
    Steps walk;
    std::string message;
};

std::string status_name(CornerVerdict::Status s);

/// Checks each label claim: it must spell a walk in g that starts with the
/// corner's own edge (closed unless partial); its class under h decides the
/// status. Non-reduced walks such as i e^-1 e are accepted and flagged.
std::vector<CornerVerdict> validate_region(const StarGraph &g, const RegionConfig &cfg, const Hypothesis &h);

struct DistributionStep {
    std::string id;
    RegionConfig delta;
    Rational bound;  // printed c(Δ) ≤ bound·π
    std::optional<std::vector<int>> hat_degrees;
    std::optional<Rational> hat_value;  // printed c(Δ̂) ≤ value·π
    std::vector<std::string> assumptions;
};

struct StepResult {
    enum class Verdict { Verified, Refuted, AssumptionDependent };
    std::string id;
    Verdict verdict = Verdict::Verified;
    CurvatureValue computed_bound;
    std::optional<CurvatureValue> computed_hat;
    std::vector<CornerVerdict> corners;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    std::vector<std::string> assumptions;
};

std::string verdict_name(StepResult::Verdict v);

/// Verified when the printed bound equals the curvature of Δ's lower bounds,
/// every degree-2 corner carries an admissible label, each label claim meets
/// its expectation, and either c(Δ̂) + bound ≤ 0 with c(Δ̂) as printed or, with
/// no Δ̂, bound ≤ 0. Listed assumptions downgrade Verified to
/// AssumptionDependent.
StepResult check_distribution_step(const StarGraph &g, const Hypothesis &h, const DistributionStep &s);

struct CertificateScript {
    std::string lemma;
    Equation equation;
    std::vector<std::string> items;  // case conditions in the lemma statement
    std::optional<std::string> hypothesis;
    std::vector<Relation> relations;
    std::vector<DistributionStep> steps;
};

/// JSON certificate; see data/curvature.lemmas. Throws std::invalid_argument.
CertificateScript parse_certificate_script(std::string_view json_text);

struct ScriptResult {
    std::string lemma;
    std::vector<StepResult> steps;
    std::optional<Contradiction> contradiction;  // the hypothesis itself fails
    std::size_t count(StepResult::Verdict v) const;
    bool has_certificate() const { return !steps.empty(); }
};

ScriptResult check_script(const CertificateScript &script);

}  // namespace aspher
