#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspher {

// Coefficient symbols are the letters 'a'..'z'; a symbol is stored as its
// offset from 'a'. Letters used as generators ('t', 'x') never appear as
// coefficients of the same relator.
using Symbol = std::uint8_t;
inline constexpr int kAlphabetSize = 26;
using SymbolMask = std::uint32_t;

inline constexpr SymbolMask symbol_bit(Symbol s) { return SymbolMask{1} << s; }
inline constexpr char symbol_char(Symbol s) { return static_cast<char>('a' + s); }
Symbol symbol_from_char(char c);

std::string render_mask(SymbolMask m);  // "a,e,f,i"
SymbolMask parse_mask(std::string_view text);

struct SignedSymbol {
    Symbol symbol = 0;
    int sign = 1;

    SignedSymbol inverse() const { return {symbol, -sign}; }
    bool operator==(const SignedSymbol &) const = default;
    // Letter order, positive before negative.
    std::strong_ordering operator<=>(const SignedSymbol &o) const
    {
        if (auto c = symbol <=> o.symbol; c != 0)
            return c;
        return o.sign <=> sign;
    }
};

enum class InverseStyle { Caret, Prime };

/// A freely reduced word in the coefficient symbols. The empty word is the
/// identity.
class CoeffWord {
public:
    CoeffWord() = default;
    explicit CoeffWord(std::vector<SignedSymbol> letters);
    static CoeffWord letter(Symbol s, int sign = 1) { return CoeffWord({SignedSymbol{s, sign}}); }

    const std::vector<SignedSymbol> &letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    CoeffWord inverse() const;
    CoeffWord operator*(const CoeffWord &rhs) const;

    // Cyclic reduction: strips x ... x^-1 wrappers.
    CoeffWord cyclically_reduced() const;
    // Least among all rotations of the cyclically reduced word and of its
    // inverse. Two closed-walk labels agree up to rotation and reversal iff
    // their canonical forms are equal.
    CoeffWord canonical_cyclic() const;

    std::string render(InverseStyle style = InverseStyle::Caret) const;

    bool operator==(const CoeffWord &) const = default;
    auto operator<=>(const CoeffWord &o) const { return letters_ <=> o.letters_; }

private:
    std::vector<SignedSymbol> letters_;
};

/// Raw letter sequence of a word as written, without free reduction.
std::vector<SignedSymbol> parse_letters(std::string_view text);
CoeffWord parse_word(std::string_view text);

struct ParseError : std::runtime_error {
    ParseError(const std::string &what, std::size_t line, std::size_t column);
    std::string message;
    std::size_t line;
    std::size_t column;
};

struct Slot {
    CoeffWord coeff;
    char gen = 't';
    int exp = 1;
    bool operator==(const Slot &) const = default;
};

/// Cyclic word g_1 x_1^{l_1} g_2 x_2^{l_2} ... g_n x_n^{l_n}: slot k holds the
/// coefficient that precedes the k-th generator occurrence.
struct Relator {
    std::vector<Slot> slots;

    std::size_t size() const { return slots.size(); }
    bool operator==(const Relator &) const = default;
};

bool is_cyclically_reduced(const Relator &r);
Relator rotate(const Relator &r, std::size_t k);
Relator invert(const Relator &r);
Relator flip_generator(const Relator &r, char gen = 't');
// Rotation whose rendering is lexicographically least.
Relator canonical_rotation(const Relator &r);
bool same_cyclic(const Relator &a, const Relator &b);
int exponent_sum(const Relator &r, char gen = 't');
SymbolMask relator_alphabet(const Relator &r);

std::string render_relator(const Relator &r);
/// Parses a cyclic word over `generators`; any other letter is a coefficient.
Relator parse_relator(std::string_view text, std::string_view generators = "t",
                      std::size_t line = 1);

// A letter of G * <generators>, used when rewriting relators.
struct Letter {
    bool generator = false;
    char gen = 't';
    Symbol symbol = 0;
    int sign = 1;

    Letter inverse() const
    {
        Letter l = *this;
        l.sign = -sign;
        return l;
    }
    bool operator==(const Letter &) const = default;
};

std::vector<Letter> to_letters(const Relator &r);
/// Freely and cyclically reduces, then cuts into slots. Throws if no
/// generator survives.
Relator from_letters(std::vector<Letter> letters);

struct Equation {
    Relator relator;
    SymbolMask nontrivial = 0;
    SymbolMask fixed_identity = 0;

    SymbolMask alphabet() const { return relator_alphabet(relator); }
    bool operator==(const Equation &o) const;
};

Equation parse_equation(std::string_view text);
std::vector<Equation> parse_equations(std::string_view text);
std::string render_equation(const Equation &e);

/// Applies u = t g (or u^-1 = t^-1 g) at `slot`, leaving the raw rewritten
/// relator. The coefficient at `slot` becomes the identity.
Relator substitute_for_identity(const Relator &r, std::size_t slot);
/// Same substitution, with every changed coefficient renamed back to the
/// letter it replaced.
Equation normalize_identity_coefficient(const Equation &e, std::size_t slot);

/// A permutation-with-inversion of the alphabet: s -> image[s].
class SymbolMap {
public:
    SymbolMap();
    static SymbolMap identity_on(SymbolMask domain);
    /// "a<->e^-1, b<->d^-1, c<->c^-1"; each pair x<->y^s maps x to y^s and y
    /// to x^s. Throws std::invalid_argument on conflicting pairs.
    static SymbolMap parse_pairs(std::string_view text);

    void set(Symbol from, SignedSymbol to);
    std::optional<SignedSymbol> image(Symbol s) const { return image_[s]; }
    SymbolMask domain() const;
    bool is_bijective() const;

    SignedSymbol apply(SignedSymbol s) const;
    CoeffWord apply(const CoeffWord &w) const;
    Relator apply(const Relator &r) const;
    SymbolMask apply(SymbolMask m) const;

    SymbolMap compose(const SymbolMap &inner) const;  // this after inner
    SymbolMap inverse() const;
    std::string render() const;

    bool operator==(const SymbolMap &) const = default;
    auto operator<=>(const SymbolMap &) const = default;

private:
    std::array<std::optional<SignedSymbol>, kAlphabetSize> image_;
};

struct SymmetryMove {
    enum class Kind { Rotation, Inversion, GeneratorFlip, Relabel };
    Kind kind = Kind::Rotation;
    std::size_t rotation = 0;
    SymbolMap map;

    static SymmetryMove rotate_by(std::size_t k) { return {Kind::Rotation, k, {}}; }
    static SymmetryMove inversion() { return {Kind::Inversion, 0, {}}; }
    static SymmetryMove t_flip() { return {Kind::GeneratorFlip, 0, {}}; }
    static SymmetryMove relabel(SymbolMap m) { return {Kind::Relabel, 0, std::move(m)}; }
};

Equation apply_move(const Equation &e, const SymmetryMove &m);
SymmetryMove inverse_move(const SymmetryMove &m, std::size_t length);

/// All relabelings sigma for which some rotation / inversion / t-flip T
/// satisfies sigma(T(relator)) = relator. Always contains the identity.
std::vector<SymbolMap> stabilizer_maps(const Equation &e);

}  // namespace aspher
