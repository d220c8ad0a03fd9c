#pragma once

#include "aspher/congruence.hpp"
#include "aspher/words.hpp"

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aspher {

/// Relators over the generator letters in `generators` (e.g. "t" or "tx").
struct Presentation {
    std::string generators = "t";
    std::vector<Relator> relators;
};

Presentation presentation_of(const Equation &e);

struct Edge {
    int id = 0;
    int v1 = 0;
    int v2 = 0;
    CoeffWord label;
    int relator = 0;
    int slot = 0;
};

/// An oriented use of an edge; forward runs v1 -> v2 and reads the label,
/// backward reads its inverse.
struct Traversal {
    int edge = 0;
    int dir = 0;  // 0 forward, 1 backward
    auto operator<=>(const Traversal &) const = default;
    Traversal reversed() const { return {edge, 1 - dir}; }
};

using Steps = std::vector<Traversal>;

struct Walk {
    Steps steps;
    int base = 0;
    CoeffWord label;
};

/// Star graph of a relative presentation: one vertex per (generator, sign).
/// The coefficient between x^a and y^b in a relator is an edge from
/// vertex(x, a) to vertex(y, -b).
class StarGraph {
public:
    explicit StarGraph(const Presentation &p);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    const std::string &vertex_name(int v) const { return names_[static_cast<std::size_t>(v)]; }
    int vertex(char gen, int sign) const;
    const std::vector<Edge> &edges() const { return edges_; }
    int relator_count() const { return relators_; }

    int source(Traversal t) const;
    int target(Traversal t) const;
    CoeffWord label(Traversal t) const;
    CoeffWord label(const Steps &steps) const;
    const std::vector<Traversal> &leaving(int v) const { return leaving_[static_cast<std::size_t>(v)]; }

    /// `edge <id> <v1> <v2> label=<word> relator=<r> slot=<k>` per line.
    std::string dump() const;

private:
    std::string generators_;
    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Traversal>> leaving_;
    int relators_ = 0;
};

struct WalkCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultWalkCap = 1'000'000;

/// Least representative among all rotations of the walk and its reversal.
Steps canonical_walk(const Steps &steps);
bool is_closed(const StarGraph &g, const Steps &steps);
bool is_cyclically_reduced(const Steps &steps);
Walk make_walk(const StarGraph &g, Steps steps);

/// Every canonical cyclically reduced closed walk of length 1..max_len,
/// ordered by (length, steps).
std::vector<Walk> reduced_closed_walks(const StarGraph &g, int max_len,
                                       std::size_t cap = kDefaultWalkCap);

/// Labels of closed walks of length two, up to rotation and reversal, with
/// proper powers x^m (|m| >= 2) and single nontrivial letters removed.
std::vector<CoeffWord> degree2_labels(const StarGraph &g, SymbolMask nontrivial);

struct LabelCandidate {
    Walk walk;
    WordClass cls;
    bool admissible = false;
};

/// Closed reduced walks of length `degree` starting with `first` whose label
/// h does not refute.
std::vector<LabelCandidate> vertex_label_candidates(const StarGraph &g, Traversal first, int degree,
                                                    const Hypothesis &h);

std::string render_steps(const StarGraph &g, const Steps &steps);

}  // namespace aspher
