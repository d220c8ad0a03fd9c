#include "aspher/congruence.hpp"

#include <doctest.h>

#include <random>

using namespace aspher;

namespace {

const SymbolMask kNontrivial = parse_mask("a,e,f,i");

Hypothesis must(const AssertResult &r)
{
    REQUIRE(std::holds_alternative<Hypothesis>(r));
    return std::get<Hypothesis>(r);
}

}  // namespace

TEST_CASE("relation literals round-trip")
{
    const auto rs = parse_relations("a=f^-1, e=i, h=b, c=1");
    REQUIRE(rs.size() == 4);
    CHECK(render_relations(rs) == "a=f^-1, e=i, h=b, c=1");
    CHECK_THROWS(parse_relations("a=="));
}

TEST_CASE("label relations")
{
    CHECK(relation_for_label(parse_word("af^-1"))->render() == "a=f");
    CHECK(relation_for_label(parse_word("af"))->render() == "a=f^-1");
    CHECK(relation_for_label(parse_word("hb^-1"))->render() == "h=b");
    CHECK(relation_for_label(parse_word("c"))->render() == "c=1");
    CHECK_FALSE(relation_for_label(parse_word("abc")).has_value());
}

TEST_CASE("af then af^-1 forces f^2 = 1")
{
    const Hypothesis h0(kNontrivial);
    const Hypothesis h1 = must(h0.assert_relation(*relation_for_label(parse_word("af"))));
    const auto r = h1.assert_relation(*relation_for_label(parse_word("af^-1")));
    REQUIRE(std::holds_alternative<Contradiction>(r));
    const auto &c = std::get<Contradiction>(r);
    CHECK(c.kind == Contradiction::Kind::Torsion);
    CHECK(c.describe() == "f^2=1");
    CHECK(c.witness.size() == 2);
}

TEST_CASE("chains to the identity name their witness")
{
    const Hypothesis h = must(hypothesis_from(parse_relations("h=b, b=1"), kNontrivial));
    CHECK(h.is_trivial(symbol_from_char('h')));
    const auto r = must(hypothesis_from(parse_relations("a=c"), kNontrivial)).assert_relation(Relation::trivial(2));
    REQUIRE(std::holds_alternative<Contradiction>(r));
    const auto &c = std::get<Contradiction>(r);
    CHECK(c.kind == Contradiction::Kind::Trivial);
    CHECK(c.describe() == "a=1");
    CHECK_FALSE(c.witness.empty());
}

TEST_CASE("redundant assertion leaves the hypothesis unchanged")
{
    const Hypothesis h = must(hypothesis_from(parse_relations("a=f^-1, f=i"), kNontrivial));
    CHECK(h.implies(parse_relations("a=i^-1")[0]));
    const Hypothesis h2 = must(h.assert_relation(parse_relations("i=a^-1")[0]));
    CHECK(h2 == h);
}

TEST_CASE("odd cycle among free symbols collapses the class")
{
    const Hypothesis h = must(hypothesis_from(parse_relations("c=d, d=g, g=c^-1"), kNontrivial));
    CHECK(h.is_trivial(symbol_from_char('c')));
    CHECK(h.is_trivial(symbol_from_char('g')));
}

TEST_CASE("classification of words")
{
    const Hypothesis h = must(hypothesis_from(parse_relations("a=f^-1, h=b, b=1"), kNontrivial));
    CHECK(classify_word(h, parse_word("af")).kind == WordClass::Kind::Trivial);
    const auto c = classify_word(h, parse_word("af^-1"));
    CHECK(c.kind == WordClass::Kind::LetterPower);
    CHECK(std::abs(c.power) == 2);
    CHECK(refuted(h, c));
    CHECK(classify_word(h, parse_word("hc")).kind == WordClass::Kind::LetterPower);
    CHECK_FALSE(refuted(h, classify_word(h, parse_word("hc"))));
    CHECK(classify_word(h, parse_word("ce")).kind == WordClass::Kind::Mixed);
}

TEST_CASE("union-find agrees with brute saturation on every small relation set")
{
    // Universe over five symbols, two of them nontrivial.
    const SymbolMask nt = symbol_bit(0) | symbol_bit(1);
    std::vector<Relation> universe;
    for (Symbol x = 0; x < 5; ++x) {
        universe.push_back(Relation::trivial(x));
        for (Symbol y = static_cast<Symbol>(x + 1); y < 5; ++y) {
            universe.push_back(Relation::equal(x, y));
            universe.push_back(Relation::equal_inverse(x, y));
        }
    }
    for (Symbol x = 0; x < 5; ++x)
        universe.push_back(Relation::equal_inverse(x, x));
    for (Symbol x = 0; x < 5; ++x)
        for (Symbol y = static_cast<Symbol>(x + 1); y < 5; ++y)
            universe.push_back(Relation::equal(y, x));
    universe.resize(30);

    std::size_t checked = 0;
    std::vector<int> pick;
    auto visit = [&](auto &&self, int start) -> void {
        std::vector<Relation> rs;
        for (int i : pick)
            rs.push_back(universe[static_cast<std::size_t>(i)]);
        const auto fast = hypothesis_from(rs, nt);
        const auto slow = brute_closure(rs, nt);
        CHECK(std::holds_alternative<Contradiction>(fast) == slow.contradictory());
        if (!slow.contradictory() && std::holds_alternative<Hypothesis>(fast)) {
            const auto part = std::get<Hypothesis>(fast).partition();
            for (int s = 0; s < 5; ++s)
                CHECK(part[static_cast<std::size_t>(s)] == slow.partition[static_cast<std::size_t>(s)]);
        }
        ++checked;
        if (pick.size() == 5)
            return;
        for (int i = start; i < 30; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    visit(visit, 0);
    CHECK(checked == 1 + 30 + 435 + 4060 + 27405 + 142506);
}

TEST_CASE("order of assertions does not change the closure")
{
    std::mt19937 rng(11);
    const auto base = parse_relations("a=f^-1, h=b, c=d^-1, g=h, e=i, d=g");
    for (int trial = 0; trial < 50; ++trial) {
        auto rs = base;
        std::shuffle(rs.begin(), rs.end(), rng);
        const auto h = hypothesis_from(rs, kNontrivial);
        REQUIRE(std::holds_alternative<Hypothesis>(h));
        CHECK(std::get<Hypothesis>(h) == must(hypothesis_from(base, kNontrivial)));
    }
}
