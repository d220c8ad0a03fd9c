#include "aspher/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace aspher {

Symbol symbol_from_char(char c)
{
    if (c < 'a' || c > 'z')
        throw std::invalid_argument(std::string("not a coefficient letter: '") + c + "'");
    return static_cast<Symbol>(c - 'a');
}

std::string render_mask(SymbolMask m)
{
    std::string out;
    for (int s = 0; s < kAlphabetSize; ++s) {
        if (m & symbol_bit(static_cast<Symbol>(s))) {
            if (!out.empty())
                out += ',';
            out += symbol_char(static_cast<Symbol>(s));
        }
    }
    return out;
}

SymbolMask parse_mask(std::string_view text)
{
    SymbolMask m = 0;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
            continue;
        m |= symbol_bit(symbol_from_char(c));
    }
    return m;
}

// ---------------------------------------------------------------- CoeffWord

CoeffWord::CoeffWord(std::vector<SignedSymbol> letters)
{
    for (const auto &l : letters) {
        if (!letters_.empty() && letters_.back() == l.inverse())
            letters_.pop_back();
        else
            letters_.push_back(l);
    }
}

CoeffWord CoeffWord::inverse() const
{
    CoeffWord w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        w.letters_.push_back(it->inverse());
    return w;
}

CoeffWord CoeffWord::operator*(const CoeffWord &rhs) const
{
    std::vector<SignedSymbol> all = letters_;
    all.insert(all.end(), rhs.letters_.begin(), rhs.letters_.end());
    return CoeffWord(std::move(all));
}

CoeffWord CoeffWord::cyclically_reduced() const
{
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo] == letters_[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    CoeffWord w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                      letters_.begin() + static_cast<std::ptrdiff_t>(hi));
    return w;
}

CoeffWord CoeffWord::canonical_cyclic() const
{
    const CoeffWord base = cyclically_reduced();
    if (base.empty())
        return base;
    CoeffWord best = base;
    for (const CoeffWord &w : {base, base.inverse()}) {
        const auto n = w.letters_.size();
        for (std::size_t k = 0; k < n; ++k) {
            CoeffWord r;
            r.letters_.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                r.letters_.push_back(w.letters_[(k + i) % n]);
            if (r < best)
                best = std::move(r);
        }
    }
    return best;
}

std::string CoeffWord::render(InverseStyle style) const
{
    if (letters_.empty())
        return "1";
    std::string out;
    for (const auto &l : letters_) {
        if (style == InverseStyle::Prime && !out.empty())
            out += ' ';
        out += symbol_char(l.symbol);
        if (l.sign < 0)
            out += style == InverseStyle::Caret ? "^-1" : "'";
    }
    return out;
}

// ------------------------------------------------------------------ parsing

ParseError::ParseError(const std::string &what, std::size_t line_, std::size_t column_)
    : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ")"),
      message(what), line(line_), column(column_)
{
}

namespace {

struct Token {
    enum class Kind { Identity, Coefficient, Generator } kind;
    char letter = 0;
    int sign = 1;
    std::size_t column = 0;
};

// Reads an optional inverse marker ("'" or "^-1") at text[i].
int read_inverse_marker(std::string_view text, std::size_t &i, std::size_t line)
{
    if (i < text.size() && text[i] == '\'') {
        ++i;
        return -1;
    }
    if (i < text.size() && text[i] == '^') {
        if (text.substr(i, 3) == "^-1") {
            i += 3;
            return -1;
        }
        if (text.substr(i, 2) == "^1") {
            i += 2;
            return 1;
        }
        throw ParseError("unsupported exponent", line, i + 1);
    }
    return 1;
}

std::vector<Token> tokenize(std::string_view text, std::string_view generators, std::size_t line)
{
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
            ++i;
            continue;
        }
        Token tok{};
        tok.column = i + 1;
        if (c == '1') {
            ++i;
            read_inverse_marker(text, i, line);
            tok.kind = Token::Kind::Identity;
        } else if (c >= 'a' && c <= 'z') {
            ++i;
            tok.letter = c;
            tok.sign = read_inverse_marker(text, i, line);
            tok.kind = generators.find(c) != std::string_view::npos ? Token::Kind::Generator
                                                                    : Token::Kind::Coefficient;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, i + 1);
        }
        tokens.push_back(tok);
    }
    return tokens;
}

}  // namespace

std::vector<SignedSymbol> parse_letters(std::string_view text)
{
    std::vector<SignedSymbol> out;
    for (const auto &tok : tokenize(text, "", 1)) {
        if (tok.kind == Token::Kind::Coefficient)
            out.push_back({symbol_from_char(tok.letter), tok.sign});
    }
    return out;
}

CoeffWord parse_word(std::string_view text) { return CoeffWord(parse_letters(text)); }

// ------------------------------------------------------------------ Relator

bool is_cyclically_reduced(const Relator &r)
{
    const auto n = r.slots.size();
    if (n == 0)
        return false;
    for (std::size_t j = 0; j < n; ++j) {
        const Slot &prev = r.slots[(j + n - 1) % n];
        const Slot &cur = r.slots[j];
        if (prev.gen == cur.gen && prev.exp + cur.exp == 0 && cur.coeff.empty())
            return false;
    }
    return true;
}

Relator rotate(const Relator &r, std::size_t k)
{
    Relator out;
    const auto n = r.slots.size();
    out.slots.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        out.slots.push_back(r.slots[(j + k) % n]);
    return out;
}

Relator invert(const Relator &r)
{
    // (g_0 x_0 g_1 x_1 ... g_{n-1} x_{n-1})^-1
    //   = g_0^-1 x_{n-1}^-1 g_{n-1}^-1 x_{n-2}^-1 ... g_1^-1 x_0^-1
    const auto n = r.slots.size();
    Relator out;
    out.slots.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Slot &c = r.slots[(n - j) % n];
        const Slot &g = r.slots[(2 * n - j - 1) % n];
        out.slots.push_back({c.coeff.inverse(), g.gen, -g.exp});
    }
    return out;
}

Relator flip_generator(const Relator &r, char gen)
{
    Relator out = r;
    for (auto &s : out.slots) {
        if (s.gen == gen)
            s.exp = -s.exp;
    }
    return out;
}

std::string render_relator(const Relator &r)
{
    std::string out;
    for (const auto &s : r.slots) {
        if (!out.empty())
            out += ' ';
        out += s.coeff.render(InverseStyle::Prime);
        out += ' ';
        out += s.gen;
        if (s.exp < 0)
            out += '\'';
    }
    return out;
}

Relator canonical_rotation(const Relator &r)
{
    Relator best = r;
    std::string best_text = render_relator(r);
    for (std::size_t k = 1; k < r.slots.size(); ++k) {
        Relator cand = rotate(r, k);
        std::string text = render_relator(cand);
        if (text < best_text) {
            best = std::move(cand);
            best_text = std::move(text);
        }
    }
    return best;
}

bool same_cyclic(const Relator &a, const Relator &b)
{
    if (a.slots.size() != b.slots.size())
        return false;
    for (std::size_t k = 0; k < b.slots.size(); ++k) {
        if (rotate(b, k) == a)
            return true;
    }
    return false;
}

int exponent_sum(const Relator &r, char gen)
{
    int sum = 0;
    for (const auto &s : r.slots) {
        if (s.gen == gen)
            sum += s.exp;
    }
    return sum;
}

SymbolMask relator_alphabet(const Relator &r)
{
    SymbolMask m = 0;
    for (const auto &s : r.slots)
        for (const auto &l : s.coeff.letters())
            m |= symbol_bit(l.symbol);
    return m;
}

Relator parse_relator(std::string_view text, std::string_view generators, std::size_t line)
{
    const auto tokens = tokenize(text, generators, line);
    Relator r;
    std::vector<std::size_t> columns;
    std::vector<SignedSymbol> pending;
    for (const auto &tok : tokens) {
        switch (tok.kind) {
        case Token::Kind::Identity:
            break;
        case Token::Kind::Coefficient:
            pending.push_back({symbol_from_char(tok.letter), tok.sign});
            break;
        case Token::Kind::Generator:
            r.slots.push_back({CoeffWord(pending), tok.letter, tok.sign});
            columns.push_back(tok.column);
            pending.clear();
            break;
        }
    }
    if (r.slots.empty())
        throw ParseError("relator needs at least one generator occurrence", line,
                         text.empty() ? 1 : text.size());
    if (!pending.empty())
        r.slots.front().coeff = CoeffWord(pending) * r.slots.front().coeff;

    const auto n = r.slots.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Slot &prev = r.slots[(j + n - 1) % n];
        const Slot &cur = r.slots[j];
        if (prev.gen == cur.gen && prev.exp + cur.exp == 0 && cur.coeff.empty()) {
            std::string g(1, cur.gen);
            throw ParseError("not cyclically reduced: " + g + (prev.exp < 0 ? "'" : "") + " 1 " +
                                 g + (cur.exp < 0 ? "'" : "") + " before slot " +
                                 std::to_string(j),
                             line, columns[j]);
        }
    }
    return r;
}

std::vector<Letter> to_letters(const Relator &r)
{
    std::vector<Letter> out;
    for (const auto &s : r.slots) {
        for (const auto &l : s.coeff.letters())
            out.push_back({false, 0, l.symbol, l.sign});
        out.push_back({true, s.gen, 0, s.exp});
    }
    return out;
}

Relator from_letters(std::vector<Letter> letters)
{
    std::vector<Letter> stack;
    for (const auto &l : letters) {
        if (!stack.empty() && stack.back() == l.inverse())
            stack.pop_back();
        else
            stack.push_back(l);
    }
    std::size_t lo = 0, hi = stack.size();
    while (hi - lo >= 2 && stack[lo] == stack[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    Relator r;
    std::vector<SignedSymbol> pending;
    for (std::size_t i = lo; i < hi; ++i) {
        const Letter &l = stack[i];
        if (l.generator) {
            r.slots.push_back({CoeffWord(pending), l.gen, l.sign});
            pending.clear();
        } else {
            pending.push_back({l.symbol, l.sign});
        }
    }
    if (r.slots.empty())
        throw std::invalid_argument("rewritten relator has no generator occurrence");
    if (!pending.empty())
        r.slots.front().coeff = CoeffWord(pending) * r.slots.front().coeff;
    return r;
}

// ----------------------------------------------------------------- Equation

bool Equation::operator==(const Equation &o) const
{
    return nontrivial == o.nontrivial && fixed_identity == o.fixed_identity &&
           same_cyclic(relator, o.relator);
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<Equation> parse_equations(std::string_view text)
{
    std::vector<Equation> out;
    SymbolMask nontrivial = 0, identity = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto body = trim(line);
        if (body.empty())
            continue;
        auto header = [&](std::string_view key, SymbolMask &dst) {
            if (body.substr(0, key.size()) != key)
                return false;
            try {
                dst = parse_mask(body.substr(key.size()));
            } catch (const std::invalid_argument &ex) {
                throw ParseError(ex.what(), line_no, 1);
            }
            return true;
        };
        if (header("nontrivial:", nontrivial) || header("identity:", identity))
            continue;
        // Keep the column numbers relative to the original line.
        const auto offset = static_cast<std::size_t>(body.data() - line.data());
        Equation e;
        try {
            e.relator = parse_relator(body, "t", line_no);
        } catch (const ParseError &err) {
            throw ParseError(err.message, line_no, err.column + offset);
        } catch (const std::invalid_argument &ex) {
            throw ParseError(ex.what(), line_no, 1);
        }
        e.nontrivial = nontrivial;
        e.fixed_identity = identity;
        out.push_back(std::move(e));
    }
    return out;
}

Equation parse_equation(std::string_view text)
{
    auto all = parse_equations(text);
    if (all.size() != 1)
        throw ParseError("expected exactly one equation, found " + std::to_string(all.size()), 1,
                         1);
    return std::move(all.front());
}

std::string render_equation(const Equation &e)
{
    std::string out;
    if (e.nontrivial)
        out += "nontrivial: " + render_mask(e.nontrivial) + "\n";
    if (e.fixed_identity)
        out += "identity: " + render_mask(e.fixed_identity) + "\n";
    out += render_relator(e.relator) + "\n";
    return out;
}

Relator substitute_for_identity(const Relator &r, std::size_t slot)
{
    const auto n = r.slots.size();
    if (slot >= n)
        throw std::out_of_range("slot " + std::to_string(slot) + " out of range");
    const Slot &prev = r.slots[(slot + n - 1) % n];
    const Slot &cur = r.slots[slot];
    if (cur.coeff.empty())
        return r;
    if (prev.gen != cur.gen || prev.exp != cur.exp)
        throw std::invalid_argument("slot " + std::to_string(slot) +
                                    " is not between equal generator powers");
    const char gen = cur.gen;
    const int eps = cur.exp;
    const CoeffWord c = cur.coeff;
    // t^eps = u^eps c^-1 and t^-eps = c u^-eps.
    auto before = [&](const Slot &s) {
        return s.gen == gen && s.exp != eps ? c : CoeffWord();
    };
    auto after = [&](const Slot &s) {
        return s.gen == gen && s.exp == eps ? c.inverse() : CoeffWord();
    };
    Relator out;
    out.slots.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Slot &p = r.slots[(j + n - 1) % n];
        const Slot &s = r.slots[j];
        out.slots.push_back({after(p) * s.coeff * before(s), s.gen, s.exp});
    }
    return out;
}

Equation normalize_identity_coefficient(const Equation &e, std::size_t slot)
{
    const auto n = e.relator.slots.size();
    if (slot >= n)
        throw std::out_of_range("slot " + std::to_string(slot) + " out of range");
    const CoeffWord &c = e.relator.slots[slot].coeff;
    if (c.empty())
        return e;
    if (c.size() != 1)
        throw std::invalid_argument("normalized coefficient must be a single symbol");
    const Symbol target = c.letters().front().symbol;
    if (e.nontrivial & symbol_bit(target))
        throw std::invalid_argument(std::string("symbol ") + symbol_char(target) +
                                    " is required to be nontrivial");
    SymbolMask seen = 0;
    for (const auto &s : e.relator.slots) {
        if (s.coeff.size() > 1)
            throw std::invalid_argument("normalization requires single-symbol coefficients");
        if (s.coeff.size() == 1) {
            const auto bit = symbol_bit(s.coeff.letters().front().symbol);
            if (seen & bit)
                throw std::invalid_argument("normalization requires distinct coefficient symbols");
            seen |= bit;
        }
    }

    const Relator raw = substitute_for_identity(e.relator, slot);
    Equation out = e;
    out.fixed_identity &= ~symbol_bit(target);
    out.nontrivial &= ~symbol_bit(target);
    SymbolMask used = seen;
    for (std::size_t j = 0; j < n; ++j) {
        const CoeffWord &orig = e.relator.slots[j].coeff;
        const CoeffWord &now = raw.slots[j].coeff;
        if (j == slot) {
            out.relator.slots[j].coeff = CoeffWord();
            continue;
        }
        if (now == orig)
            continue;
        if (orig.empty()) {
            Symbol fresh = 0;
            while (fresh < kAlphabetSize &&
                   ((used & symbol_bit(fresh)) || symbol_char(fresh) == 't'))
                ++fresh;
            if (fresh == kAlphabetSize)
                throw std::invalid_argument("alphabet exhausted");
            used |= symbol_bit(fresh);
            out.relator.slots[j].coeff = CoeffWord::letter(fresh);
            continue;
        }
        // Renamed: keeps its letter. Nontriviality survives conjugation only.
        const Symbol s = orig.letters().front().symbol;
        if (now.canonical_cyclic() != orig.canonical_cyclic())
            out.nontrivial &= ~symbol_bit(s);
    }
    return out;
}

// ---------------------------------------------------------------- SymbolMap

SymbolMap::SymbolMap() = default;

SymbolMap SymbolMap::identity_on(SymbolMask domain)
{
    SymbolMap m;
    for (int s = 0; s < kAlphabetSize; ++s) {
        const auto sym = static_cast<Symbol>(s);
        if (domain & symbol_bit(sym))
            m.image_[s] = SignedSymbol{sym, 1};
    }
    return m;
}

void SymbolMap::set(Symbol from, SignedSymbol to)
{
    if (image_[from] && *image_[from] != to)
        throw std::invalid_argument(std::string("conflicting images for ") + symbol_char(from));
    image_[from] = to;
}

SymbolMap SymbolMap::parse_pairs(std::string_view text)
{
    SymbolMap m;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        const auto item = trim(text.substr(pos, comma - pos));
        pos = comma + 1;
        if (item.empty())
            continue;
        const auto arrow = item.find("<->");
        if (arrow == std::string_view::npos)
            throw std::invalid_argument("symbol map pair needs '<->': " + std::string(item));
        const auto lhs = parse_letters(item.substr(0, arrow));
        const auto rhs = parse_letters(item.substr(arrow + 3));
        if (lhs.size() != 1 || rhs.size() != 1 || lhs[0].sign != 1)
            throw std::invalid_argument("malformed symbol map pair: " + std::string(item));
        const Symbol x = lhs[0].symbol;
        const SignedSymbol y = rhs[0];
        m.set(x, y);
        m.set(y.symbol, SignedSymbol{x, y.sign});
    }
    return m;
}

SymbolMask SymbolMap::domain() const
{
    SymbolMask d = 0;
    for (int s = 0; s < kAlphabetSize; ++s)
        if (image_[s])
            d |= symbol_bit(static_cast<Symbol>(s));
    return d;
}

bool SymbolMap::is_bijective() const
{
    SymbolMask targets = 0;
    for (const auto &img : image_) {
        if (!img)
            continue;
        const auto bit = symbol_bit(img->symbol);
        if (targets & bit)
            return false;
        targets |= bit;
    }
    return targets == domain();
}

SignedSymbol SymbolMap::apply(SignedSymbol s) const
{
    const auto &img = image_[s.symbol];
    if (!img)
        throw std::invalid_argument(std::string("symbol map undefined on ") +
                                    symbol_char(s.symbol));
    return {img->symbol, img->sign * s.sign};
}

CoeffWord SymbolMap::apply(const CoeffWord &w) const
{
    std::vector<SignedSymbol> out;
    out.reserve(w.size());
    for (const auto &l : w.letters())
        out.push_back(apply(l));
    return CoeffWord(std::move(out));
}

Relator SymbolMap::apply(const Relator &r) const
{
    Relator out = r;
    for (auto &s : out.slots)
        s.coeff = apply(s.coeff);
    return out;
}

SymbolMask SymbolMap::apply(SymbolMask m) const
{
    SymbolMask out = 0;
    for (int s = 0; s < kAlphabetSize; ++s) {
        const auto sym = static_cast<Symbol>(s);
        if (m & symbol_bit(sym))
            out |= symbol_bit(apply(SignedSymbol{sym, 1}).symbol);
    }
    return out;
}

SymbolMap SymbolMap::compose(const SymbolMap &inner) const
{
    SymbolMap out;
    for (int s = 0; s < kAlphabetSize; ++s)
        if (inner.image_[s])
            out.image_[s] = apply(*inner.image_[s]);
    return out;
}

SymbolMap SymbolMap::inverse() const
{
    SymbolMap out;
    for (int s = 0; s < kAlphabetSize; ++s)
        if (image_[s])
            out.image_[image_[s]->symbol] = SignedSymbol{static_cast<Symbol>(s), image_[s]->sign};
    return out;
}

std::string SymbolMap::render() const
{
    std::string out;
    for (int s = 0; s < kAlphabetSize; ++s) {
        if (!image_[s])
            continue;
        if (!out.empty())
            out += ", ";
        out += symbol_char(static_cast<Symbol>(s));
        out += "->";
        out += CoeffWord::letter(image_[s]->symbol, image_[s]->sign).render();
    }
    return out;
}

// -------------------------------------------------------------------- moves

Equation apply_move(const Equation &e, const SymmetryMove &m)
{
    Equation out = e;
    switch (m.kind) {
    case SymmetryMove::Kind::Rotation:
        out.relator = rotate(e.relator, m.rotation % std::max<std::size_t>(1, e.relator.size()));
        break;
    case SymmetryMove::Kind::Inversion:
        out.relator = invert(e.relator);
        break;
    case SymmetryMove::Kind::GeneratorFlip:
        out.relator = flip_generator(e.relator, 't');
        break;
    case SymmetryMove::Kind::Relabel: {
        const SymbolMask need = e.alphabet() | e.nontrivial | e.fixed_identity;
        if ((m.map.domain() & need) != need)
            throw std::invalid_argument("symbol map does not cover the equation alphabet");
        if (!m.map.is_bijective())
            throw std::invalid_argument("symbol map is not a bijection");
        out.relator = m.map.apply(e.relator);
        out.nontrivial = m.map.apply(e.nontrivial);
        out.fixed_identity = m.map.apply(e.fixed_identity);
        break;
    }
    }
    return out;
}

SymmetryMove inverse_move(const SymmetryMove &m, std::size_t length)
{
    switch (m.kind) {
    case SymmetryMove::Kind::Rotation:
        return SymmetryMove::rotate_by(length == 0 ? 0 : (length - m.rotation % length) % length);
    case SymmetryMove::Kind::Relabel:
        return SymmetryMove::relabel(m.map.inverse());
    default:
        return m;
    }
}

namespace {

std::optional<SymbolMap> matching_map(const Relator &from, const Relator &to)
{
    if (from.slots.size() != to.slots.size())
        return std::nullopt;
    SymbolMap m;
    for (std::size_t j = 0; j < from.slots.size(); ++j) {
        const Slot &a = from.slots[j];
        const Slot &b = to.slots[j];
        if (a.gen != b.gen || a.exp != b.exp || a.coeff.size() != b.coeff.size() ||
            a.coeff.size() > 1)
            return std::nullopt;
        if (a.coeff.empty())
            continue;
        const SignedSymbol x = a.coeff.letters().front();
        const SignedSymbol y = b.coeff.letters().front();
        const SignedSymbol img{y.symbol, y.sign * x.sign};
        if (auto cur = m.image(x.symbol); cur && *cur != img)
            return std::nullopt;
        m.set(x.symbol, img);
    }
    if (!m.is_bijective())
        return std::nullopt;
    return m;
}

}  // namespace

std::vector<SymbolMap> stabilizer_maps(const Equation &e)
{
    std::set<SymbolMap> found;
    found.insert(SymbolMap::identity_on(e.alphabet()));
    const auto n = e.relator.size();
    for (int inv = 0; inv < 2; ++inv) {
        for (int flip = 0; flip < 2; ++flip) {
            Relator base = e.relator;
            if (inv)
                base = invert(base);
            if (flip)
                base = flip_generator(base, 't');
            for (std::size_t k = 0; k < n; ++k) {
                auto m = matching_map(rotate(base, k), e.relator);
                if (!m || m->domain() != e.alphabet())
                    continue;
                if (m->apply(e.nontrivial) != e.nontrivial)
                    continue;
                found.insert(*m);
            }
        }
    }
    return {found.begin(), found.end()};
}

}  // namespace aspher
