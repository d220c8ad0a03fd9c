#pragma once

#include "aspher/words.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace aspher {

struct Relation {
    enum class Kind { Equal, EqualInverse, Trivial };
    Kind kind = Kind::Equal;
    Symbol x = 0;
    Symbol y = 0;  // unused for Trivial

    static Relation equal(Symbol a, Symbol b) { return {Kind::Equal, a, b}; }
    static Relation equal_inverse(Symbol a, Symbol b) { return {Kind::EqualInverse, a, b}; }
    static Relation trivial(Symbol a) { return {Kind::Trivial, a, a}; }

    std::string render() const;  // "a=f^-1", "c=1"
    bool operator==(const Relation &) const = default;
    auto operator<=>(const Relation &) const = default;
};

/// Parses a hypothesis literal such as "a=f^-1, e=i, h=b, c=1".
std::vector<Relation> parse_relations(std::string_view text);
std::string render_relations(const std::vector<Relation> &rs);

/// The relation forced by a length-2 label being trivial: x^s y^r = 1 gives
/// x = y^(-rs). Words of length 1 give x = 1.
std::optional<Relation> relation_for_label(const CoeffWord &label);

/// Where a symbol's class points: the least symbol of its class raised to
/// `sign`, or the identity when rep is kIdentityRep.
struct ClassRef {
    static constexpr int kIdentityRep = -1;
    int rep = kIdentityRep;
    int sign = 1;
    bool operator==(const ClassRef &) const = default;
};
using Partition = std::array<ClassRef, kAlphabetSize>;

struct Contradiction {
    enum class Kind { Torsion, Trivial };
    Kind kind = Kind::Trivial;
    Symbol symbol = 0;
    std::vector<Relation> witness;

    std::string describe() const;  // "f^2=1" or "i=1"
};

struct WordClass {
    enum class Kind { Trivial, LetterPower, Mixed };
    Kind kind = Kind::Trivial;
    Symbol letter = 0;  // LetterPower
    int power = 0;      // LetterPower, nonzero
    CoeffWord reduced;  // cyclically reduced image

    std::string render() const;
};

class Hypothesis;
using AssertResult = std::variant<Hypothesis, Contradiction>;

/// A consistent set of coincidences among coefficient symbols in a
/// torsion-free group. Classes of signed symbols are kept in a union-find
/// with parity; an odd cycle x = x^-1 collapses the class to the identity.
class Hypothesis {
public:
    explicit Hypothesis(SymbolMask nontrivial = 0);

    AssertResult assert_relation(const Relation &r) const;

    SymbolMask nontrivial() const { return nontrivial_; }
    const std::vector<Relation> &relations() const { return relations_; }

    ClassRef find(Symbol s) const;
    bool is_trivial(Symbol s) const { return find(s).rep == ClassRef::kIdentityRep; }
    /// True when the class of s contains a symbol required to be nontrivial.
    bool is_nontrivial(Symbol s) const;
    bool implies(const Relation &r) const;

    /// Canonical form: equal partitions mean equal hypotheses.
    Partition partition() const;
    CoeffWord substitute(const CoeffWord &w) const;

    bool operator==(const Hypothesis &o) const
    {
        return nontrivial_ == o.nontrivial_ && partition() == o.partition();
    }

private:
    static constexpr int kIdentityNode = kAlphabetSize;
    static constexpr int kNodes = kAlphabetSize + 1;

    struct Root {
        int node;
        int parity;  // node = root^parity
    };
    Root root_of(int node) const;
    bool class_trivial(int root) const;
    std::vector<Relation> path_between(int from, int to) const;

    SymbolMask nontrivial_;
    std::array<int, kNodes> parent_{};
    std::array<int, kNodes> parity_{};
    std::array<int, kNodes> rank_{};
    std::array<bool, kNodes> collapsed_{};
    std::vector<Relation> relations_;
};

/// Folds relations into an empty hypothesis; stops at the first
/// contradiction.
AssertResult hypothesis_from(const std::vector<Relation> &relations, SymbolMask nontrivial);

/// Naive saturation over signed-symbol equalities, independent of the
/// union-find. Returns the closed partition and the nontrivial symbols forced
/// to the identity.
struct BruteClosure {
    Partition partition{};
    SymbolMask forced_trivial_nontrivial = 0;
    bool contradictory() const { return forced_trivial_nontrivial != 0; }
};
BruteClosure brute_closure(const std::vector<Relation> &relations, SymbolMask nontrivial);

WordClass classify_word(const Hypothesis &h, const CoeffWord &w);

/// True when the word cannot be trivial: a nonzero power of a symbol whose
/// class is required nontrivial.
bool refuted(const Hypothesis &h, const WordClass &c);

std::vector<CoeffWord> admissible_labels(const Hypothesis &h, const std::vector<CoeffWord> &labels);

}  // namespace aspher
