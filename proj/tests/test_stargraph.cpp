#include "aspher/stargraph.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace aspher;

namespace {

Equation flagship() { return parse_equation(oracle::read_file(oracle::data_path("equation.eq"))); }

std::vector<std::string> rendered(const std::vector<CoeffWord> &ws)
{
    std::vector<std::string> out;
    for (const auto &w : ws)
        out.push_back(w.render());
    return out;
}

}  // namespace

TEST_CASE("flagship star graph edges")
{
    const StarGraph g(presentation_of(flagship()));
    REQUIRE(g.edges().size() == 9);
    CHECK(g.vertex_count() == 2);
    // Loops a, f at t-; e, i at t+; the rest run t+ -> t-.
    const std::string expected = "edge 0 t- t- label=a relator=0 slot=0\n"
                                 "edge 1 t+ t- label=b relator=0 slot=1\n"
                                 "edge 2 t+ t- label=c relator=0 slot=2\n"
                                 "edge 3 t+ t- label=d relator=0 slot=3\n"
                                 "edge 4 t+ t+ label=e relator=0 slot=4\n"
                                 "edge 5 t- t- label=f relator=0 slot=5\n"
                                 "edge 6 t+ t- label=g relator=0 slot=6\n"
                                 "edge 7 t+ t- label=h relator=0 slot=7\n"
                                 "edge 8 t+ t+ label=i relator=0 slot=8\n";
    CHECK(g.dump() == expected);
}

TEST_CASE("edges agree with a hand-built edge list")
{
    const StarGraph g(presentation_of(flagship()));
    const auto plain = oracle::plain_edges(
        {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", -1}, {"f", 1}, {"g", 1}, {"h", 1}, {"i", -1}});
    REQUIRE(plain.size() == g.edges().size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        CHECK(g.vertex_name(g.edges()[i].v1) == plain[i].from);
        CHECK(g.vertex_name(g.edges()[i].v2) == plain[i].to);
        CHECK(g.edges()[i].label.render() == plain[i].label);
    }
}

TEST_CASE("degree-two label set")
{
    const Equation e = flagship();
    const StarGraph g(presentation_of(e));
    const auto labels = rendered(degree2_labels(g, e.nontrivial));
    CHECK(labels.size() == 14);
    std::set<CoeffWord> expected;
    for (const char *s : {"af", "af^-1", "ei", "ei^-1", "hb^-1", "hc^-1", "hd^-1", "hg^-1", "gb^-1", "gc^-1",
                          "gd^-1", "db^-1", "dc^-1", "cb^-1"})
        expected.insert(parse_word(s).canonical_cyclic());
    const auto got = degree2_labels(g, e.nontrivial);
    CHECK(std::set<CoeffWord>(got.begin(), got.end()) == expected);
}

TEST_CASE("reduced closed walks of length at most two")
{
    const StarGraph g(presentation_of(flagship()));
    const auto walks = reduced_closed_walks(g, 2);
    std::size_t len1 = 0;
    for (const auto &w : walks) {
        CHECK(is_closed(g, w.steps));
        CHECK(is_cyclically_reduced(w.steps));
        CHECK(canonical_walk(w.steps) == w.steps);
        len1 += w.steps.size() == 1;
    }
    CHECK(len1 == 4);
    CHECK(walks.size() == 4 + 10 + 4 + 4);
}

TEST_CASE("walk enumeration matches brute force up to length five")
{
    const StarGraph g(presentation_of(flagship()));
    const auto plain = oracle::plain_edges(
        {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", -1}, {"f", 1}, {"g", 1}, {"h", 1}, {"i", -1}});
    for (int len = 1; len <= 4; ++len) {
        const auto brute = oracle::brute_reduced_walks(plain, len);
        const auto walks = reduced_closed_walks(g, len);
        std::set<std::vector<std::pair<int, int>>> mine;
        for (const auto &w : walks) {
            std::vector<std::pair<int, int>> s;
            for (auto t : w.steps)
                s.push_back({t.edge, t.dir});
            mine.insert(s);
        }
        CHECK(mine.size() == walks.size());
        CHECK(mine == brute);
    }
}

TEST_CASE("walk cap is enforced")
{
    const StarGraph g(presentation_of(flagship()));
    CHECK_THROWS_AS(reduced_closed_walks(g, 4, 10), WalkCapExceeded);
}

TEST_CASE("corner label candidates exclude refuted words")
{
    const Equation e = flagship();
    const StarGraph g(presentation_of(e));
    const auto h = std::get<Hypothesis>(hypothesis_from(parse_relations("a=f"), e.nontrivial));
    const auto cands = vertex_label_candidates(g, {0, 0}, 2, h);
    for (const auto &c : cands) {
        CHECK(c.walk.steps.front() == Traversal{0, 0});
        CHECK_FALSE(refuted(h, c.cls));
        CHECK(c.walk.label.canonical_cyclic() != parse_word("af").canonical_cyclic());
    }
    bool saw_trivial = false;
    for (const auto &c : cands)
        saw_trivial |= c.admissible;
    CHECK(saw_trivial);  // a f^-1
}
