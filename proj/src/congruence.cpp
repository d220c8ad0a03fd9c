#include "aspher/congruence.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

namespace aspher {

std::string Relation::render() const
{
    std::string out(1, symbol_char(x));
    switch (kind) {
    case Kind::Equal:
        return out + "=" + symbol_char(y);
    case Kind::EqualInverse:
        return out + "=" + symbol_char(y) + "^-1";
    case Kind::Trivial:
        return out + "=1";
    }
    return out;
}

std::vector<Relation> parse_relations(std::string_view text)
{
    std::vector<Relation> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        std::string item;
        for (char c : text.substr(pos, comma - pos))
            if (!std::isspace(static_cast<unsigned char>(c)))
                item += c;
        pos = comma + 1;
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("relation needs '=': " + item);
        const auto lhs = parse_letters(item.substr(0, eq));
        const std::string rhs_text = item.substr(eq + 1);
        if (lhs.size() != 1)
            throw std::invalid_argument("left side must be one symbol: " + item);
        const SignedSymbol x = lhs[0];
        if (rhs_text == "1") {
            out.push_back(Relation::trivial(x.symbol));
            continue;
        }
        const auto rhs = parse_letters(rhs_text);
        if (rhs.size() != 1)
            throw std::invalid_argument("right side must be one symbol or 1: " + item);
        const int sign = x.sign * rhs[0].sign;
        out.push_back(sign > 0 ? Relation::equal(x.symbol, rhs[0].symbol)
                               : Relation::equal_inverse(x.symbol, rhs[0].symbol));
    }
    return out;
}

std::string render_relations(const std::vector<Relation> &rs)
{
    std::string out;
    for (const auto &r : rs) {
        if (!out.empty())
            out += ", ";
        out += r.render();
    }
    return out;
}

std::optional<Relation> relation_for_label(const CoeffWord &label)
{
    const auto &ls = label.letters();
    if (ls.size() == 1)
        return Relation::trivial(ls[0].symbol);
    if (ls.size() != 2)
        return std::nullopt;
    const int sign = -ls[0].sign * ls[1].sign;
    if (ls[0].symbol == ls[1].symbol)
        return Relation::trivial(ls[0].symbol);  // x^2 = 1 forces x = 1
    return sign > 0 ? Relation::equal(ls[0].symbol, ls[1].symbol)
                    : Relation::equal_inverse(ls[0].symbol, ls[1].symbol);
}

std::string Contradiction::describe() const
{
    std::string s(1, symbol_char(symbol));
    return kind == Kind::Torsion ? s + "^2=1" : s + "=1";
}

std::string WordClass::render() const
{
    switch (kind) {
    case Kind::Trivial:
        return "trivial";
    case Kind::LetterPower:
        return std::string(1, symbol_char(letter)) + "^" + std::to_string(power);
    case Kind::Mixed:
        return "mixed(" + reduced.render() + ")";
    }
    return {};
}

// --------------------------------------------------------------- Hypothesis

Hypothesis::Hypothesis(SymbolMask nontrivial) : nontrivial_(nontrivial)
{
    std::iota(parent_.begin(), parent_.end(), 0);
    parity_.fill(1);
}

Hypothesis::Root Hypothesis::root_of(int node) const
{
    int parity = 1;
    while (parent_[node] != node) {
        parity *= parity_[node];
        node = parent_[node];
    }
    return {node, parity};
}

bool Hypothesis::class_trivial(int root) const
{
    return collapsed_[root] || root_of(kIdentityNode).node == root;
}

ClassRef Hypothesis::find(Symbol s) const
{
    const auto r = root_of(s);
    if (class_trivial(r.node))
        return {};
    // Least member of the class is the representative.
    for (int m = 0; m < kAlphabetSize; ++m) {
        const auto rm = root_of(m);
        if (rm.node == r.node)
            return {m, r.parity * rm.parity};
    }
    return {s, 1};
}

bool Hypothesis::is_nontrivial(Symbol s) const
{
    const auto r = root_of(s).node;
    for (int m = 0; m < kAlphabetSize; ++m)
        if ((nontrivial_ & symbol_bit(static_cast<Symbol>(m))) && root_of(m).node == r)
            return true;
    return false;
}

bool Hypothesis::implies(const Relation &r) const
{
    const auto a = find(r.x);
    switch (r.kind) {
    case Relation::Kind::Trivial:
        return a.rep == ClassRef::kIdentityRep;
    case Relation::Kind::Equal:
    case Relation::Kind::EqualInverse: {
        auto b = find(r.y);
        if (r.kind == Relation::Kind::EqualInverse)
            b.sign = -b.sign;
        if (a.rep == ClassRef::kIdentityRep || b.rep == ClassRef::kIdentityRep)
            return a.rep == b.rep;
        return a == b;
    }
    }
    return false;
}

Partition Hypothesis::partition() const
{
    Partition p{};
    for (int s = 0; s < kAlphabetSize; ++s)
        p[s] = find(static_cast<Symbol>(s));
    return p;
}

CoeffWord Hypothesis::substitute(const CoeffWord &w) const
{
    std::vector<SignedSymbol> out;
    for (const auto &l : w.letters()) {
        const auto c = find(l.symbol);
        if (c.rep == ClassRef::kIdentityRep)
            continue;
        out.push_back({static_cast<Symbol>(c.rep), c.sign * l.sign});
    }
    return CoeffWord(std::move(out));
}

std::vector<Relation> Hypothesis::path_between(int from, int to) const
{
    // Breadth-first search over the recorded relations gives a shortest chain.
    std::array<int, kNodes> via{};
    via.fill(-1);
    std::array<bool, kNodes> seen{};
    std::deque<int> queue{from};
    seen[from] = true;
    auto ends = [](const Relation &r) {
        return std::pair<int, int>{r.x, r.kind == Relation::Kind::Trivial ? kIdentityNode : r.y};
    };
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (u == to)
            break;
        for (std::size_t i = 0; i < relations_.size(); ++i) {
            const auto [a, b] = ends(relations_[i]);
            const int v = a == u ? b : (b == u ? a : -1);
            if (v < 0 || seen[v])
                continue;
            seen[v] = true;
            via[v] = static_cast<int>(i);
            queue.push_back(v);
        }
    }
    std::vector<Relation> chain;
    if (!seen[to])
        return chain;
    for (int v = to; v != from;) {
        const Relation &r = relations_[static_cast<std::size_t>(via[v])];
        chain.push_back(r);
        const auto [a, b] = ends(r);
        v = a == v ? b : a;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

AssertResult Hypothesis::assert_relation(const Relation &r) const
{
    if (implies(r))
        return *this;

    Hypothesis next = *this;
    const int u = r.x;
    const int v = r.kind == Relation::Kind::Trivial ? kIdentityNode : r.y;
    const int want = r.kind == Relation::Kind::EqualInverse ? -1 : 1;
    const auto ru = root_of(u);
    const auto rv = root_of(v);
    bool odd_cycle = false;

    if (ru.node == rv.node) {
        // u = v^want closes a cycle; a parity clash means x = x^-1.
        if (ru.parity * rv.parity != want)
            odd_cycle = true;
        next.collapsed_[ru.node] = next.collapsed_[ru.node] || odd_cycle;
    } else {
        int a = ru.node, b = rv.node;
        if (next.rank_[a] < next.rank_[b])
            std::swap(a, b);
        // Attach b under a with the parity that realises u = v^want.
        next.parent_[b] = a;
        next.parity_[b] = ru.parity * rv.parity * want;
        if (next.rank_[a] == next.rank_[b])
            ++next.rank_[a];
        next.collapsed_[a] = next.collapsed_[a] || next.collapsed_[b];
    }
    next.relations_.push_back(r);

    const auto root = next.root_of(u).node;
    if (!next.class_trivial(root))
        return next;

    // The class is now the identity; it must not contain a nontrivial symbol.
    std::optional<Symbol> victim;
    auto nontrivial_member = [&](int s) {
        return s < kAlphabetSize && (nontrivial_ & symbol_bit(static_cast<Symbol>(s)));
    };
    if (nontrivial_member(v))
        victim = static_cast<Symbol>(v);
    else if (nontrivial_member(u))
        victim = static_cast<Symbol>(u);
    else
        for (int m = 0; m < kAlphabetSize && !victim; ++m)
            if (nontrivial_member(m) && next.root_of(m).node == root)
                victim = static_cast<Symbol>(m);
    if (!victim)
        return next;

    Contradiction c;
    c.symbol = *victim;
    c.kind = odd_cycle ? Contradiction::Kind::Torsion : Contradiction::Kind::Trivial;
    c.witness = path_between(u, v);
    if (!odd_cycle && (r.kind != Relation::Kind::Trivial || *victim != u)) {
        // Chain from the victim to the identity node through all relations.
        c.witness = next.path_between(*victim, kIdentityNode);
        if (c.witness.empty())
            c.witness = next.relations_;
        return c;
    }
    c.witness.push_back(r);
    return c;
}

AssertResult hypothesis_from(const std::vector<Relation> &relations, SymbolMask nontrivial)
{
    Hypothesis h(nontrivial);
    for (const auto &r : relations) {
        auto next = h.assert_relation(r);
        if (auto *c = std::get_if<Contradiction>(&next))
            return *c;
        h = std::get<Hypothesis>(std::move(next));
    }
    return h;
}

// ------------------------------------------------------------ brute closure

BruteClosure brute_closure(const std::vector<Relation> &relations, SymbolMask nontrivial)
{
    // Nodes: 2s is s, 2s+1 is s^-1, the last node is the identity.
    constexpr int N = 2 * kAlphabetSize + 1;
    constexpr int one = N - 1;
    auto inv = [](int n) { return n == one ? one : (n ^ 1); };
    std::vector<std::vector<bool>> eq(N, std::vector<bool>(N, false));
    auto link = [&](int a, int b) { eq[a][b] = eq[b][a] = true; };
    for (const auto &r : relations) {
        const int x = 2 * r.x;
        switch (r.kind) {
        case Relation::Kind::Equal:
            link(x, 2 * r.y);
            break;
        case Relation::Kind::EqualInverse:
            link(x, 2 * r.y + 1);
            break;
        case Relation::Kind::Trivial:
            link(x, one);
            break;
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        auto add = [&](int a, int b) {
            if (!eq[a][b]) {
                eq[a][b] = eq[b][a] = true;
                changed = true;
            }
        };
        for (int a = 0; a < N; ++a) {
            add(a, a);
            for (int b = 0; b < N; ++b) {
                if (!eq[a][b])
                    continue;
                add(inv(a), inv(b));
                for (int c = 0; c < N; ++c)
                    if (eq[b][c])
                        add(a, c);
            }
        }
        // Torsion-free: x = x^-1 means x^2 = 1, hence x = 1.
        for (int s = 0; s < kAlphabetSize; ++s)
            if (eq[2 * s][2 * s + 1])
                add(2 * s, one);
    }

    BruteClosure out;
    for (int s = 0; s < kAlphabetSize; ++s) {
        if (eq[2 * s][one]) {
            out.partition[s] = {};
            if (nontrivial & symbol_bit(static_cast<Symbol>(s)))
                out.forced_trivial_nontrivial |= symbol_bit(static_cast<Symbol>(s));
            continue;
        }
        for (int m = 0; m < kAlphabetSize; ++m) {
            if (eq[2 * s][2 * m]) {
                out.partition[s] = {m, 1};
                break;
            }
            if (eq[2 * s][2 * m + 1]) {
                out.partition[s] = {m, -1};
                break;
            }
        }
    }
    return out;
}

// ----------------------------------------------------------- classification

WordClass classify_word(const Hypothesis &h, const CoeffWord &w)
{
    WordClass c;
    c.reduced = h.substitute(w).cyclically_reduced();
    const auto &ls = c.reduced.letters();
    if (ls.empty()) {
        c.kind = WordClass::Kind::Trivial;
        return c;
    }
    const Symbol first = ls.front().symbol;
    if (std::all_of(ls.begin(), ls.end(), [&](const SignedSymbol &l) { return l.symbol == first; })) {
        c.kind = WordClass::Kind::LetterPower;
        c.letter = first;
        // Free reduction leaves x^m as |m| copies of one signed letter.
        c.power = static_cast<int>(ls.size()) * ls.front().sign;
        return c;
    }
    c.kind = WordClass::Kind::Mixed;
    return c;
}

bool refuted(const Hypothesis &h, const WordClass &c)
{
    return c.kind == WordClass::Kind::LetterPower && h.is_nontrivial(c.letter);
}

std::vector<CoeffWord> admissible_labels(const Hypothesis &h, const std::vector<CoeffWord> &labels)
{
    std::vector<CoeffWord> out;
    for (const auto &w : labels)
        if (classify_word(h, w).kind == WordClass::Kind::Trivial)
            out.push_back(w);
    return out;
}

}  // namespace aspher
