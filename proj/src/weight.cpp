#include "aspher/weight.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aspher {

// ---------------------------------------------------------------- θ files

WeightFunction parse_weight_function(std::string_view text, std::size_t edge_count)
{
    std::vector<std::optional<Rational>> seen(edge_count);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue;
        auto fail = [&](const std::string &msg) {
            throw ParseError(msg, line_no, 1);
        };
        if (tag != "θ" && tag != "theta")
            fail("expected 'θ <edge> = <p>/<q>'");
        long long id = -1;
        std::string eq, value, extra;
        if (!(ls >> id >> eq >> value) || eq != "=" || (ls >> extra))
            fail("expected 'θ <edge> = <p>/<q>'");
        if (id < 0 || static_cast<std::size_t>(id) >= edge_count)
            fail("edge id " + std::to_string(id) + " out of range");
        if (seen[static_cast<std::size_t>(id)])
            fail("edge " + std::to_string(id) + " assigned twice");
        try {
            seen[static_cast<std::size_t>(id)] = parse_rational(value);
        } catch (const std::invalid_argument &err) {
            fail(err.what());
        }
    }
    WeightFunction w;
    for (std::size_t e = 0; e < edge_count; ++e) {
        if (!seen[e])
            throw ParseError("no weight for edge " + std::to_string(e), line_no, 1);
        w.weights.push_back(*seen[e]);
    }
    return w;
}

std::string render_weight_function(const WeightFunction &w)
{
    std::string out;
    for (std::size_t e = 0; e < w.weights.size(); ++e)
        out += "θ " + std::to_string(e) + " = " + render_rational(w.weights[e]) + "\n";
    return out;
}

// ------------------------------------------------------------ split transform

Relator specialize(const Equation &e, const Hypothesis &h)
{
    std::vector<Letter> letters;
    for (const Letter &l : to_letters(e.relator)) {
        if (l.generator) {
            letters.push_back(l);
            continue;
        }
        if (e.fixed_identity & symbol_bit(l.symbol))
            continue;
        const ClassRef c = h.find(l.symbol);
        if (c.rep == ClassRef::kIdentityRep)
            continue;
        letters.push_back({false, 't', static_cast<Symbol>(c.rep), c.sign * l.sign});
    }
    return from_letters(std::move(letters));
}

AssertResult with_fixed_identity(const Equation &e, const Hypothesis &h)
{
    AssertResult cur = h;
    for (Symbol s = 0; s < kAlphabetSize; ++s) {
        if (!(e.fixed_identity & symbol_bit(s)))
            continue;
        cur = std::get<Hypothesis>(cur).assert_relation(Relation::trivial(s));
        if (std::holds_alternative<Contradiction>(cur))
            return cur;
    }
    return cur;
}

bool is_split_slot(const Relator &r, std::size_t slot)
{
    const std::size_t n = r.size();
    if (slot >= n || n < 2)
        return false;
    const Slot &prev = r.slots[(slot + n - 1) % n];
    const Slot &cur = r.slots[slot];
    return prev.gen == 't' && prev.exp == -1 && cur.gen == 't' && cur.exp == 1 && cur.coeff.size() == 1;
}

std::optional<std::size_t> auto_split_slot(const Relator &r)
{
    std::optional<std::size_t> last, last_repeating;
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (!is_split_slot(r, j))
            continue;
        last = j;
        const Symbol s = r.slots[j].coeff.letters().front().symbol;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k == j)
                continue;
            for (const auto &l : r.slots[k].coeff.letters())
                if (l.symbol == s)
                    last_repeating = j;
        }
    }
    return last_repeating ? last_repeating : last;
}

Presentation split_transform(const Relator &r, std::size_t slot)
{
    if (!is_split_slot(r, slot))
        throw std::invalid_argument("slot " + std::to_string(slot) + " does not read t^-1 g t");
    const std::size_t n = r.size();
    const SignedSymbol g = r.slots[slot].coeff.letters().front();

    // Rotate so the t^-1 g t occurrence sits at the end, then cut it out.
    const Relator rot = rotate(r, (slot + 1) % n);
    std::vector<Letter> letters;
    auto gen = [](char c, int sign) { return Letter{true, c, 0, sign}; };
    for (std::size_t j = 0; j < n; ++j) {
        const Slot &s = rot.slots[j];
        if (j + 1 == n) {
            // ... t^-1 (g t) with the t^-1 already emitted by slot n-2.
            letters.pop_back();
            letters.push_back(gen('x', 1));
            continue;
        }
        for (const auto &l : s.coeff.letters()) {
            if (l.symbol == g.symbol) {
                letters.push_back(gen('t', 1));
                letters.push_back(gen('x', l.sign * g.sign));
                letters.push_back(gen('t', -1));
            } else {
                letters.push_back({false, 't', l.symbol, l.sign});
            }
        }
        letters.push_back(gen(s.gen, s.exp));
    }
    Relator v1 = from_letters(std::move(letters));
    for (std::size_t j = 0; j < v1.size(); ++j) {
        if (v1.slots[j].gen == 'x') {
            v1 = rotate(v1, j);
            break;
        }
    }
    const CoeffWord gw = CoeffWord::letter(g.symbol, g.sign);
    Relator v2{{{CoeffWord(), 'x', -1}, {CoeffWord(), 't', -1}, {gw, 't', 1}}};
    return Presentation{"tx", {v1, v2}};
}

Relator substitute_back(const Relator &v1, const CoeffWord &g)
{
    std::vector<Letter> out;
    for (const Letter &l : to_letters(v1)) {
        if (l.generator && l.gen == 'x') {
            std::vector<Letter> piece{{true, 't', 0, -1}};
            for (const auto &s : g.letters())
                piece.push_back({false, 't', s.symbol, s.sign});
            piece.push_back({true, 't', 0, 1});
            if (l.sign < 0) {
                std::reverse(piece.begin(), piece.end());
                for (auto &p : piece)
                    p = p.inverse();
            }
            out.insert(out.end(), piece.begin(), piece.end());
        } else {
            out.push_back(l);
        }
    }
    return from_letters(std::move(out));
}

// ------------------------------------------------------------------ verify

std::string verdict_name(WeightTestReport::Verdict v)
{
    switch (v) {
    case WeightTestReport::Verdict::Pass:
        return "pass";
    case WeightTestReport::Verdict::Fail:
        return "fail";
    case WeightTestReport::Verdict::Inconclusive:
        return "inconclusive";
    }
    return {};
}

namespace {

Steps free_reduce(const Steps &s)
{
    Steps out;
    for (Traversal t : s) {
        if (!out.empty() && out.back() == t.reversed())
            out.pop_back();
        else
            out.push_back(t);
    }
    return out;
}

Steps cyclic_reduce(Steps s)
{
    s = free_reduce(s);
    std::size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && s[lo] == s[hi - 1].reversed()) {
        ++lo;
        --hi;
    }
    return Steps(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi));
}

Steps inverse_steps(const Steps &s)
{
    Steps out;
    for (auto it = s.rbegin(); it != s.rend(); ++it)
        out.push_back(it->reversed());
    return out;
}

Steps concat(std::initializer_list<Steps> parts)
{
    Steps out;
    for (const auto &p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

Steps power(const Steps &s, int k)
{
    const Steps base = k < 0 ? inverse_steps(s) : s;
    Steps out;
    for (int i = 0; i < std::abs(k); ++i)
        out.insert(out.end(), base.begin(), base.end());
    return out;
}

// Zero-weight subgraph: components, spanning forests and fundamental cycles.
struct ZeroForest {
    std::vector<int> comp;                  // per vertex
    std::vector<int> root;                  // per component
    std::vector<int> rank;                  // per component
    std::vector<std::vector<Steps>> cycles;  // rooted fundamental cycles
    std::vector<std::optional<Traversal>> parent;  // tree edge into vertex

    Steps from_root(const StarGraph &g, int v) const
    {
        Steps s;
        while (parent[static_cast<std::size_t>(v)]) {
            const Traversal t = *parent[static_cast<std::size_t>(v)];
            s.push_back(t);
            v = g.source(t);
        }
        std::reverse(s.begin(), s.end());
        return s;
    }

    Steps path(const StarGraph &g, int u, int v) const
    {
        return free_reduce(concat({inverse_steps(from_root(g, u)), from_root(g, v)}));
    }
};

ZeroForest zero_forest(const StarGraph &g, const WeightFunction &theta)
{
    const int nv = g.vertex_count();
    ZeroForest f;
    f.comp.assign(static_cast<std::size_t>(nv), -1);
    f.parent.assign(static_cast<std::size_t>(nv), std::nullopt);
    std::vector<bool> tree_edge(g.edges().size(), false);
    auto zero = [&](int e) { return theta.weights[static_cast<std::size_t>(e)] == Rational(0); };
    for (int v = 0; v < nv; ++v) {
        if (f.comp[static_cast<std::size_t>(v)] >= 0)
            continue;
        const int c = static_cast<int>(f.root.size());
        f.root.push_back(v);
        std::vector<int> queue{v};
        f.comp[static_cast<std::size_t>(v)] = c;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            for (Traversal t : g.leaving(queue[qi])) {
                if (!zero(t.edge))
                    continue;
                const int w = g.target(t);
                if (f.comp[static_cast<std::size_t>(w)] >= 0)
                    continue;
                f.comp[static_cast<std::size_t>(w)] = c;
                f.parent[static_cast<std::size_t>(w)] = t;
                tree_edge[static_cast<std::size_t>(t.edge)] = true;
                queue.push_back(w);
            }
        }
    }
    f.rank.assign(f.root.size(), 0);
    f.cycles.assign(f.root.size(), {});
    for (const Edge &e : g.edges()) {
        if (!zero(e.id) || tree_edge[static_cast<std::size_t>(e.id)])
            continue;
        const int c = f.comp[static_cast<std::size_t>(e.v1)];
        ++f.rank[static_cast<std::size_t>(c)];
        f.cycles[static_cast<std::size_t>(c)].push_back(
            free_reduce(concat({f.from_root(g, e.v1), Steps{{e.id, 0}}, inverse_steps(f.from_root(g, e.v2))})));
    }
    return f;
}

Rational walk_weight(const WeightFunction &theta, const Steps &s)
{
    Rational w = 0;
    for (Traversal t : s)
        w += theta.weights[static_cast<std::size_t>(t.edge)];
    return w;
}

}  // namespace

WeightTestReport verify(const StarGraph &g, const WeightFunction &theta, const Hypothesis &h,
                        const WeightOptions &opt)
{
    using V = WeightTestReport::Verdict;
    if (theta.weights.size() != g.edges().size())
        throw std::invalid_argument("weight function has " + std::to_string(theta.weights.size()) +
                                    " entries for " + std::to_string(g.edges().size()) + " edges");
    WeightTestReport rep;
    rep.relator_sums.assign(static_cast<std::size_t>(g.relator_count()), Rational(0));
    for (const Edge &e : g.edges())
        rep.relator_sums[static_cast<std::size_t>(e.relator)] += 1 - theta.weights[static_cast<std::size_t>(e.id)];

    auto fail = [&](int cond, std::string reason) {
        rep.verdict = V::Fail;
        rep.failed_condition = cond;
        rep.reason = std::move(reason);
        return rep;
    };

    for (const Edge &e : g.edges())
        if (theta.weights[static_cast<std::size_t>(e.id)] < 0)
            return fail(3, "edge " + std::to_string(e.id) + " has negative weight " +
                               render_rational(theta.weights[static_cast<std::size_t>(e.id)]));
    for (std::size_t r = 0; r < rep.relator_sums.size(); ++r)
        if (rep.relator_sums[r] != Rational(2))
            return fail(1, "relator " + std::to_string(r) + " has sum " + render_rational(rep.relator_sums[r]) +
                               " != 2");

    const ZeroForest f = zero_forest(g, theta);
    std::set<Steps> seen;
    auto examine = [&](const Steps &steps) -> bool {
        ExaminedCycle c;
        c.steps = canonical_walk(steps);
        if (!seen.insert(c.steps).second)
            return true;
        c.label = g.label(c.steps);
        c.cls = classify_word(h, c.label);
        c.weight = walk_weight(theta, c.steps);
        const bool ok = refuted(h, c.cls);
        rep.examined.push_back(c);
        if (!ok)
            rep.witness = c;
        return ok;
    };

    std::string pending;
    for (std::size_t c = 0; c < f.root.size(); ++c) {
        const auto &cyc = f.cycles[c];
        for (const Steps &z : cyc)
            if (!examine(cyclic_reduce(z)))
                return fail(2, "zero-weight cycle with label " + rep.witness->cls.render());
        if (f.rank[c] < 2)
            continue;
        // Two independent zero-weight cycles: some combination reads a word
        // that is not a power of one nontrivial letter.
        const Steps &z1 = cyc[0], &z2 = cyc[1];
        std::vector<Steps> combos{concat({z1, z2}), concat({z1, inverse_steps(z2)})};
        const WordClass c1 = classify_word(h, g.label(z1).cyclically_reduced());
        const WordClass c2 = classify_word(h, g.label(z2).cyclically_reduced());
        if (c1.kind == WordClass::Kind::LetterPower && c2.kind == WordClass::Kind::LetterPower)
            combos.push_back(concat({power(z1, c2.power), power(z2, -c1.power)}));
        for (const Steps &w : combos) {
            const Steps red = cyclic_reduce(w);
            if (!red.empty() && !examine(red))
                return fail(2, "zero-weight subgraph of rank " + std::to_string(f.rank[c]) +
                                   " carries label " + rep.witness->cls.render());
        }
        pending = "zero-weight subgraph of rank " + std::to_string(f.rank[c]) + " not certified";
    }

    // Walks through positive edges: a cyclic sequence of positive traversals
    // joined by reduced zero-weight paths inside components.
    std::vector<Traversal> positive;
    for (const Edge &e : g.edges())
        if (theta.weights[static_cast<std::size_t>(e.id)] > 0)
            for (int d = 0; d < 2; ++d)
                positive.push_back({e.id, d});

    auto comp_of = [&](int v) { return f.comp[static_cast<std::size_t>(v)]; };
    auto segments = [&](int u, int v) {
        const int c = comp_of(u);
        std::vector<Steps> out{f.path(g, u, v)};
        if (f.rank[static_cast<std::size_t>(c)] >= 1) {
            const int root = f.root[static_cast<std::size_t>(c)];
            for (const Steps &z : f.cycles[static_cast<std::size_t>(c)])
                for (int k = -opt.winding; k <= opt.winding; ++k)
                    if (k != 0)
                        out.push_back(free_reduce(concat({f.path(g, u, root), power(z, k), f.path(g, root, v)})));
        }
        return out;
    };

    std::size_t budget = 0;
    bool failed = false;
    bool winds = false;
    Steps seq;
    std::function<void(Rational)> dfs = [&](Rational weight) {
        if (failed)
            return;
        const int start = comp_of(g.source(seq.front()));
        const int here = comp_of(g.target(seq.back()));
        if (here == start) {
            std::vector<std::vector<Steps>> options;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                const int u = g.target(seq[i]);
                const int v = g.source(seq[(i + 1) % seq.size()]);
                options.push_back(segments(u, v));
                if (f.rank[static_cast<std::size_t>(comp_of(u))] >= 1)
                    winds = true;
            }
            std::vector<std::size_t> idx(options.size(), 0);
            while (!failed) {
                if (++budget > opt.cap)
                    throw WalkCapExceeded("more than " + std::to_string(opt.cap) + " low-weight walks");
                Steps walk;
                for (std::size_t i = 0; i < seq.size(); ++i) {
                    walk.push_back(seq[i]);
                    const Steps &s = options[i][idx[i]];
                    walk.insert(walk.end(), s.begin(), s.end());
                }
                if (is_cyclically_reduced(walk) && !examine(walk))
                    failed = true;
                std::size_t p = 0;
                while (p < idx.size() && ++idx[p] == options[p].size())
                    idx[p++] = 0;
                if (p == idx.size())
                    break;
            }
        }
        for (Traversal t : positive) {
            if (comp_of(g.source(t)) != here)
                continue;
            const Rational w = weight + theta.weights[static_cast<std::size_t>(t.edge)];
            if (w >= 2)
                continue;
            seq.push_back(t);
            dfs(w);
            seq.pop_back();
            if (failed)
                return;
        }
    };
    try {
        for (Traversal t : positive) {
            seq = {t};
            dfs(theta.weights[static_cast<std::size_t>(t.edge)]);
            if (failed)
                return fail(2, "closed walk of weight " + render_rational(rep.witness->weight) + " with label " +
                                   rep.witness->cls.render());
        }
    } catch (const WalkCapExceeded &err) {
        rep.verdict = V::Inconclusive;
        rep.reason = err.what();
        return rep;
    }
    if (winds && pending.empty())
        pending = "a walk of weight < 2 can wind around a zero-weight cycle";
    if (!pending.empty()) {
        rep.verdict = V::Inconclusive;
        rep.reason = pending;
        return rep;
    }
    rep.verdict = V::Pass;
    return rep;
}

// ------------------------------------------------------------------ search

std::vector<Rational> default_domain() { return {Rational(0), Rational(1, 2), Rational(1)}; }

std::vector<Rational> parse_domain(std::string_view text)
{
    std::vector<Rational> out;
    std::string item;
    for (char c : std::string(text) + ",") {
        if (c == ',' || c == '{' || c == '}') {
            if (item.find_first_not_of(" \t") != std::string::npos)
                out.push_back(parse_rational(item));
            item.clear();
        } else {
            item += c;
        }
    }
    return out;
}

SearchResult search(const StarGraph &g, const Hypothesis &h, std::vector<Rational> domain, std::size_t cap,
                    const WeightOptions &opt)
{
    SearchResult res;
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    domain.erase(std::remove_if(domain.begin(), domain.end(), [](const Rational &r) { return r < 0; }),
                 domain.end());
    if (domain.empty()) {
        res.reason = "empty domain";
        return res;
    }
    const std::size_t ne = g.edges().size();
    const auto nr = static_cast<std::size_t>(g.relator_count());
    std::vector<Rational> partial(nr, Rational(0));
    std::vector<int> remaining(nr, 0);
    for (const Edge &e : g.edges())
        ++remaining[static_cast<std::size_t>(e.relator)];
    const Rational lo = 1 - domain.back(), hi = 1 - domain.front();

    WeightFunction theta;
    theta.weights.assign(ne, Rational(0));
    bool done = false;
    std::function<void(std::size_t)> assign = [&](std::size_t e) {
        if (done)
            return;
        if (e == ne) {
            if (++res.candidates > cap) {
                res.reason = "cap of " + std::to_string(cap) + " candidates exceeded";
                done = true;
                return;
            }
            WeightTestReport rep = verify(g, theta, h, opt);
            if (rep.verdict == WeightTestReport::Verdict::Pass) {
                // Re-checked through a serialization round trip.
                const WeightFunction again = parse_weight_function(render_weight_function(theta), ne);
                if (verify(g, again, h, opt).verdict == WeightTestReport::Verdict::Pass) {
                    res.theta = theta;
                    res.report = std::move(rep);
                    done = true;
                }
            } else if (rep.verdict == WeightTestReport::Verdict::Inconclusive) {
                ++res.inconclusive;
            }
            return;
        }
        const auto r = static_cast<std::size_t>(g.edges()[e].relator);
        for (const Rational &v : domain) {
            const Rational p = partial[r] + (1 - v);
            const int rem = remaining[r] - 1;
            if (p + rem * lo > 2 || p + rem * hi < 2)
                continue;
            theta.weights[e] = v;
            partial[r] = p;
            --remaining[r];
            assign(e + 1);
            ++remaining[r];
            partial[r] = p - (1 - v);
            if (done)
                return;
        }
    };
    assign(0);
    if (!res.theta && res.reason.empty())
        res.reason = "no assignment passes (" + std::to_string(res.candidates) + " candidates, " +
                     std::to_string(res.inconclusive) + " inconclusive)";
    return res;
}

}  // namespace aspher
