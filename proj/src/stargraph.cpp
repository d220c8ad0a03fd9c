#include "aspher/stargraph.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aspher {

Presentation presentation_of(const Equation &e)
{
    return Presentation{"t", {e.relator}};
}

StarGraph::StarGraph(const Presentation &p) : generators_(p.generators)
{
    for (char g : generators_) {
        names_.push_back(std::string(1, g) + "+");
        names_.push_back(std::string(1, g) + "-");
    }
    leaving_.resize(names_.size());
    relators_ = static_cast<int>(p.relators.size());
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        const auto &slots = p.relators[r].slots;
        const std::size_t n = slots.size();
        for (std::size_t j = 0; j < n; ++j) {
            const Slot &prev = slots[(j + n - 1) % n];
            const Slot &cur = slots[j];
            Edge e;
            e.id = static_cast<int>(edges_.size());
            e.v1 = vertex(prev.gen, prev.exp);
            e.v2 = vertex(cur.gen, -cur.exp);
            e.label = cur.coeff;
            e.relator = static_cast<int>(r);
            e.slot = static_cast<int>(j);
            edges_.push_back(e);
        }
    }
    for (const Edge &e : edges_) {
        leaving_[static_cast<std::size_t>(e.v1)].push_back({e.id, 0});
        leaving_[static_cast<std::size_t>(e.v2)].push_back({e.id, 1});
    }
    for (auto &l : leaving_)
        std::sort(l.begin(), l.end());
}

int StarGraph::vertex(char gen, int sign) const
{
    const auto pos = generators_.find(gen);
    if (pos == std::string::npos)
        throw std::invalid_argument(std::string("unknown generator '") + gen + "'");
    return static_cast<int>(2 * pos + (sign < 0 ? 1 : 0));
}

int StarGraph::source(Traversal t) const
{
    const Edge &e = edges_.at(static_cast<std::size_t>(t.edge));
    return t.dir == 0 ? e.v1 : e.v2;
}

int StarGraph::target(Traversal t) const
{
    const Edge &e = edges_.at(static_cast<std::size_t>(t.edge));
    return t.dir == 0 ? e.v2 : e.v1;
}

CoeffWord StarGraph::label(Traversal t) const
{
    const Edge &e = edges_.at(static_cast<std::size_t>(t.edge));
    return t.dir == 0 ? e.label : e.label.inverse();
}

CoeffWord StarGraph::label(const Steps &steps) const
{
    CoeffWord w;
    for (Traversal t : steps)
        w = w * label(t);
    return w;
}

std::string StarGraph::dump() const
{
    std::ostringstream os;
    for (const Edge &e : edges_) {
        os << "edge " << e.id << ' ' << vertex_name(e.v1) << ' ' << vertex_name(e.v2)
           << " label=" << (e.label.empty() ? "1" : e.label.render()) << " relator=" << e.relator
           << " slot=" << e.slot << '\n';
    }
    return os.str();
}

Steps canonical_walk(const Steps &steps)
{
    const std::size_t n = steps.size();
    Steps rev;
    rev.reserve(n);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        rev.push_back(it->reversed());
    Steps best = steps;
    for (const Steps *src : std::array<const Steps *, 2>{&steps, &rev}) {
        for (std::size_t k = 0; k < n; ++k) {
            Steps cand;
            cand.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                cand.push_back((*src)[(k + i) % n]);
            if (cand < best)
                best = std::move(cand);
        }
    }
    return best;
}

bool is_closed(const StarGraph &g, const Steps &steps)
{
    if (steps.empty())
        return false;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        if (g.target(steps[i]) != g.source(steps[i + 1]))
            return false;
    return g.target(steps.back()) == g.source(steps.front());
}

bool is_cyclically_reduced(const Steps &steps)
{
    const std::size_t n = steps.size();
    for (std::size_t i = 0; i < n; ++i)
        if (steps[(i + 1) % n] == steps[i].reversed())
            return false;
    return true;
}

Walk make_walk(const StarGraph &g, Steps steps)
{
    Walk w;
    w.base = steps.empty() ? 0 : g.source(steps.front());
    w.label = g.label(steps);
    w.steps = std::move(steps);
    return w;
}

namespace {

// Closed reduced walks beginning with `first`, of length exactly `len`
// (or every length up to `len` when `exact` is false).
template <class Emit>
void extend(const StarGraph &g, Steps &path, int len, bool exact, Emit &&emit)
{
    const int start = g.source(path.front());
    const int here = g.target(path.back());
    const int cur = static_cast<int>(path.size());
    if (here == start && (!exact || cur == len) && is_cyclically_reduced(path))
        emit(path);
    if (cur >= len)
        return;
    for (Traversal t : g.leaving(here)) {
        if (t == path.back().reversed())
            continue;
        path.push_back(t);
        extend(g, path, len, exact, emit);
        path.pop_back();
    }
}

}  // namespace

std::vector<Walk> reduced_closed_walks(const StarGraph &g, int max_len, std::size_t cap)
{
    std::vector<Walk> out;
    if (max_len < 1)
        return out;
    for (const Edge &e : g.edges()) {
        for (int dir = 0; dir < 2; ++dir) {
            Steps path{{e.id, dir}};
            extend(g, path, max_len, false, [&](const Steps &p) {
                if (canonical_walk(p) != p)
                    return;
                if (out.size() >= cap)
                    throw WalkCapExceeded("more than " + std::to_string(cap) + " closed walks");
                out.push_back(make_walk(g, p));
            });
        }
    }
    std::sort(out.begin(), out.end(), [](const Walk &a, const Walk &b) {
        if (a.steps.size() != b.steps.size())
            return a.steps.size() < b.steps.size();
        return a.steps < b.steps;
    });
    return out;
}

std::vector<CoeffWord> degree2_labels(const StarGraph &g, SymbolMask nontrivial)
{
    const Hypothesis h(nontrivial);
    std::set<CoeffWord> labels;
    for (const Walk &w : reduced_closed_walks(g, 2)) {
        if (w.steps.size() != 2)
            continue;
        const WordClass c = classify_word(h, w.label);
        if (c.kind == WordClass::Kind::LetterPower) {
            if (c.power > 1 || c.power < -1)
                continue;
            if (nontrivial & symbol_bit(c.letter))
                continue;
        }
        labels.insert(w.label.canonical_cyclic());
    }
    return {labels.begin(), labels.end()};
}

std::vector<LabelCandidate> vertex_label_candidates(const StarGraph &g, Traversal first, int degree,
                                                    const Hypothesis &h)
{
    std::vector<LabelCandidate> out;
    if (degree < 1)
        return out;
    Steps path{first};
    extend(g, path, degree, true, [&](const Steps &p) {
        LabelCandidate c;
        c.walk = make_walk(g, p);
        c.cls = classify_word(h, c.walk.label);
        if (refuted(h, c.cls))
            return;
        c.admissible = c.cls.kind == WordClass::Kind::Trivial;
        out.push_back(std::move(c));
    });
    return out;
}

std::string render_steps(const StarGraph &g, const Steps &steps)
{
    std::string s;
    for (Traversal t : steps) {
        if (!s.empty())
            s += ' ';
        s += std::to_string(t.edge);
        s += t.dir == 0 ? "+" : "-";
    }
    (void)g;
    return s;
}

}  // namespace aspher
