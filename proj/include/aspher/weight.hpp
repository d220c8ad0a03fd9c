#pragma once

#include "aspher/congruence.hpp"
#include "aspher/rational.hpp"
#include "aspher/stargraph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aspher {

struct WeightFunction {
    std::vector<Rational> weights;  // indexed by edge id

    bool operator==(const WeightFunction &) const = default;
};

/// Lines `θ <edge-id> = <p>/<q>` (the ASCII spelling `theta` is accepted);
/// '#' starts a comment. Every edge 0..edge_count-1 must appear once.
WeightFunction parse_weight_function(std::string_view text, std::size_t edge_count);
std::string render_weight_function(const WeightFunction &w);

/// The relator with every coefficient replaced by its class representative
/// under h; fixed-identity symbols become 1.
Relator specialize(const Equation &e, const Hypothesis &h);

/// h extended by x=1 for each fixed-identity symbol x.
AssertResult with_fixed_identity(const Equation &e, const Hypothesis &h);

bool is_split_slot(const Relator &r, std::size_t slot);
/// Last slot matching t^-1 g t whose coefficient symbol also occurs elsewhere,
/// else the last matching slot.
std::optional<std::size_t> auto_split_slot(const Relator &r);

/// Puts x = t^-1 g t at `slot`: returns v1 (the relator rewritten over t, x)
/// and v2 = x^-1 t^-1 g t. Throws std::invalid_argument when the slot does
/// not read t^-1 g t with g a single letter.
Presentation split_transform(const Relator &r, std::size_t slot);

/// Replaces x by t^-1 g t in v1; the result is cyclically reduced.
Relator substitute_back(const Relator &v1, const CoeffWord &g);

struct ExaminedCycle {
    Steps steps;
    CoeffWord label;
    WordClass cls;
    Rational weight;
};

struct WeightTestReport {
    enum class Verdict { Pass, Fail, Inconclusive };
    Verdict verdict = Verdict::Pass;
    int failed_condition = 0;  // 1, 2 or 3 when Fail
    std::string reason;
    std::optional<ExaminedCycle> witness;
    std::vector<Rational> relator_sums;  // sum of (1 - θ) per relator
    std::vector<ExaminedCycle> examined;
};

std::string verdict_name(WeightTestReport::Verdict v);

struct WeightOptions {
    int winding = 2;  // zero-weight cycle windings tried per visit
    std::size_t cap = kDefaultWalkCap;
};

/// Checks the three weight-test conditions. Condition 2 is certified only
/// when every reduced closed walk of weight < 2 has a label that h refutes;
/// a walk that can wind around a zero-weight cycle leaves the verdict
/// Inconclusive unless a failing walk is found.
WeightTestReport verify(const StarGraph &g, const WeightFunction &theta, const Hypothesis &h,
                        const WeightOptions &opt = {});

struct SearchResult {
    std::optional<WeightFunction> theta;
    std::optional<WeightTestReport> report;
    std::size_t candidates = 0;
    std::size_t inconclusive = 0;
    std::string reason;  // set when nothing passes
};

std::vector<Rational> default_domain();
std::vector<Rational> parse_domain(std::string_view text);  // "0,1/2,1"

/// Lexicographically least θ over `domain` (edge order, ascending values)
/// that verifies Pass. Assignments violating condition 1 are pruned.
SearchResult search(const StarGraph &g, const Hypothesis &h, std::vector<Rational> domain,
                    std::size_t cap = kDefaultWalkCap, const WeightOptions &opt = {});

}  // namespace aspher
