#pragma once

#include "aspher/congruence.hpp"
#include "aspher/curvature.hpp"
#include "aspher/weight.hpp"
#include "aspher/words.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aspher {

using LabelMask = std::uint32_t;

/// The degree-2 label set S with the symmetry maps acting on it. Symbols
/// fixed to the identity in the equation are treated as free here.
struct CaseSpace {
    Equation equation;
    std::vector<CoeffWord> labels;  // canonical cyclic forms, sorted
    std::vector<Relation> relations;  // relation making each label trivial
    std::vector<SymbolMap> group;
    SymbolMask fixed_identity = 0;  // as given; used by weight searches

    explicit CaseSpace(const Equation &e);

    std::optional<std::size_t> index_of(const CoeffWord &w) const;
    /// Labels made admissible by the relations, or nothing on contradiction.
    std::optional<LabelMask> closure(const std::vector<Relation> &rs) const;
    std::optional<LabelMask> closure(LabelMask m) const;
    std::vector<Relation> relations_of(LabelMask m) const;
    LabelMask act(const SymbolMap &sigma, LabelMask m) const;
    std::string key(LabelMask m) const;  // "ei^-1,bh^-1"
};

struct CanonicalCase {
    LabelMask mask = 0;  // least representative
    std::string key;
    int n = 0;
};

/// Throws std::invalid_argument when the labels are not closed and consistent.
CanonicalCase canonicalize(const CaseSpace &space, LabelMask m);

/// Closed consistent subsets of S up to symmetry, ordered by (N, key).
std::vector<CanonicalCase> enumerate_cases(const CaseSpace &space);

/// `<id>: <relations>[; R in {<labels>}]`, `@note <text>` attaches to the
/// previous item, '#' comments.
struct CaseItem {
    std::string id;
    std::vector<Relation> fixed;
    std::vector<CoeffWord> choices;  // R labels; empty when the item has none
    std::vector<std::string> notes;
    std::string text;
};

std::vector<CaseItem> parse_case_items(std::string_view text);

/// One concrete hypothesis per R choice (or one if there is none).
struct ItemVariant {
    std::string id;  // "7" or "7[gb^-1]"
    std::vector<Relation> relations;
};

std::vector<ItemVariant> expand(const CaseItem &item);

struct CurvatureLemma {
    std::string lemma;
    std::vector<CaseItem> items;
    std::optional<ScriptResult> certificate;
};

CurvatureLemma load_curvature_lemma(std::string_view json_text);

struct AuditInputs {
    std::vector<CaseItem> weight_items;
    std::vector<CurvatureLemma> curvature;
    std::vector<CaseItem> exceptions;
};

struct AuditOptions {
    bool weight_search = true;
    std::vector<Rational> domain{Rational(0), Rational(1)};
    std::size_t cap = kDefaultWalkCap;
};

enum class Coverage { WeightTest, Curvature, Counting, Exceptional, Unaccounted };
std::string coverage_name(Coverage c);

struct Classification {
    Coverage kind = Coverage::Unaccounted;
    std::vector<std::string> sources;  // item ids, or "k=3"
};

struct AuditedCase {
    CanonicalCase c;
    int corners = 0;  // symbols occurring in admissible labels
    std::vector<std::string> weight, curvature, exception;  // exact matches
    Classification exact;
    Classification monotone;
    std::optional<std::string> weight_search;  // outcome for WeightTest cases
};

struct AuditReport {
    std::vector<AuditedCase> cases;
    std::vector<std::string> discrepancies;
    std::map<std::string, std::size_t> exact_counts;
    std::map<std::string, std::size_t> monotone_counts;
    std::size_t exception_entries = 0;
    std::size_t exception_variants = 0;
    std::vector<std::string> certificates;  // one summary line per script
};

AuditReport audit(const CaseSpace &space, const AuditInputs &in, const AuditOptions &opt = {});

std::string render_audit_text(const AuditReport &r);

}  // namespace aspher
