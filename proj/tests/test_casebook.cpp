#include "aspher/casebook.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <bit>
#include <filesystem>
#include <iostream>

using namespace aspher;

namespace {

const Equation &flagship()
{
    static const Equation e = parse_equation(oracle::read_file(oracle::data_path("equation.eq")));
    return e;
}

const CaseSpace &space()
{
    static const CaseSpace s(flagship());
    return s;
}

LabelMask mask_of(const std::vector<std::string> &labels)
{
    LabelMask m = 0;
    for (const auto &l : labels) {
        const auto i = space().index_of(parse_word(l));
        REQUIRE(i);
        m |= LabelMask{1} << *i;
    }
    return m;
}

LabelMask closed(const std::string &rels)
{
    const auto m = space().closure(parse_relations(rels));
    REQUIRE(m);
    return *m;
}

const std::vector<CanonicalCase> &all_cases()
{
    static const std::vector<CanonicalCase> c = enumerate_cases(space());
    return c;
}

AuditInputs load_inputs()
{
    AuditInputs in;
    in.weight_items = parse_case_items(oracle::read_file(oracle::data_path("lemma31.cases")));
    in.exceptions = parse_case_items(oracle::read_file(oracle::data_path("exceptions.cases")));
    std::vector<std::filesystem::path> files;
    for (const auto &f : std::filesystem::directory_iterator(oracle::data_path("curvature.lemmas")))
        files.push_back(f.path());
    std::sort(files.begin(), files.end());
    for (const auto &f : files)
        in.curvature.push_back(load_curvature_lemma(oracle::read_file(f.string())));
    return in;
}

}  // namespace

TEST_CASE("case space has the fourteen degree-2 labels")
{
    CHECK(space().labels.size() == 14);
    CHECK(space().relations.size() == 14);
    CHECK(!space().group.empty());
    for (const SymbolMap &s : space().group)
        CHECK(space().act(s, (LabelMask{1} << 14) - 1) == (LabelMask{1} << 14) - 1);
}

TEST_CASE("enumeration starts with the single empty case")
{
    const auto &cs = all_cases();
    REQUIRE(!cs.empty());
    CHECK(cs.front().n == 0);
    CHECK(cs.front().key.empty());
    CHECK(std::count_if(cs.begin(), cs.end(), [](const CanonicalCase &c) { return c.n == 0; }) == 1);
}

TEST_CASE("no case holds both af and af^-1")
{
    const LabelMask both = mask_of({"af", "af^-1"});
    for (const CanonicalCase &c : all_cases())
        for (const SymbolMap &s : space().group)
            CHECK((space().act(s, c.mask) & both) != both);
}

TEST_CASE("closure adds the labels forced by transitivity")
{
    const LabelMask m = closed("h=b, h=c");
    CHECK((m & mask_of({"cb^-1"})) != 0);
    CHECK((m & mask_of({"hb^-1", "hc^-1"})) == mask_of({"hb^-1", "hc^-1"}));
    CHECK(!space().closure(parse_relations("a=f, a=f^-1")));
}

TEST_CASE("symmetric hypotheses share a key")
{
    CHECK(canonicalize(space(), closed("e=i")).key == canonicalize(space(), closed("a=f")).key);
    CHECK(canonicalize(space(), closed("g=b")).key == canonicalize(space(), closed("h=d")).key);
}

TEST_CASE("canonicalize is idempotent and constant on orbits")
{
    for (const CanonicalCase &c : all_cases()) {
        INFO(c.key);
        CHECK(canonicalize(space(), c.mask).key == c.key);
        for (const SymbolMap &s : space().group)
            CHECK(canonicalize(space(), space().act(s, c.mask)).key == c.key);
    }
}

TEST_CASE("every case is closed, consistent and its own minimum")
{
    std::set<std::string> keys;
    for (const CanonicalCase &c : all_cases()) {
        CHECK(space().closure(c.mask) == std::optional<LabelMask>(c.mask));
        CHECK(c.n == std::popcount(c.mask));
        CHECK(keys.insert(c.key).second);
        for (const SymbolMap &s : space().group)
            CHECK(c.key <= space().key(space().act(s, c.mask)));
    }
    // Ordered by (N, key).
    for (std::size_t i = 1; i < all_cases().size(); ++i) {
        const auto &a = all_cases()[i - 1];
        const auto &b = all_cases()[i];
        CHECK((a.n < b.n || (a.n == b.n && a.key < b.key)));
    }
}

TEST_CASE("orbit count matches a direct orbit enumeration")
{
    // Independent count: walk all closed subsets and collect orbits as sets.
    std::set<std::set<LabelMask>> orbits;
    for (LabelMask m = 0; m < (LabelMask{1} << 14); ++m) {
        const auto c = space().closure(m);
        if (!c || *c != m)
            continue;
        std::set<LabelMask> orbit;
        for (const SymbolMap &s : space().group)
            orbit.insert(space().act(s, m));
        orbit.insert(m);
        orbits.insert(orbit);
    }
    CHECK(orbits.size() == all_cases().size());
}

TEST_CASE("degree-2 labels commute with symmetry relabelling")
{
    const StarGraph g(presentation_of(space().equation));
    for (const SymbolMap &s : space().group) {
        std::set<CoeffWord> mapped;
        for (const auto &w : space().labels)
            mapped.insert(s.apply(w).canonical_cyclic());
        CHECK(mapped == std::set<CoeffWord>(space().labels.begin(), space().labels.end()));
    }
}

TEST_CASE("non-closed input is rejected")
{
    CHECK_THROWS_AS(canonicalize(space(), mask_of({"hb^-1", "hc^-1"})), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize(space(), mask_of({"af", "af^-1"})), std::invalid_argument);
}

TEST_CASE("case item parsing")
{
    const auto items = parse_case_items("# c\n1: a=f^-1\n@note fixed\n2: a=f, e=i; R in {hc^-1,hd^-1, dc^-1}\n");
    REQUIRE(items.size() == 2);
    CHECK(items[0].notes == std::vector<std::string>{"fixed"});
    CHECK(items[1].choices.size() == 3);
    const auto vs = expand(items[1]);
    REQUIRE(vs.size() == 3);
    CHECK(vs[0].id == "2[hc^-1]");
    CHECK(vs[0].relations.size() == 3);
    CHECK(expand(items[0]).size() == 1);
    CHECK_THROWS_AS(parse_case_items("@note x\n"), ParseError);
    CHECK_THROWS_AS(parse_case_items("1 a=f\n"), ParseError);
    CHECK_THROWS_AS(parse_case_items("1: a=f; R in {hc^-1\n"), ParseError);
    CHECK_THROWS_AS(parse_case_items("1: a=f; S in {hc^-1}\n"), ParseError);
}

TEST_CASE("data files parse")
{
    const AuditInputs in = load_inputs();
    CHECK(in.weight_items.size() == 90);
    CHECK(in.exceptions.size() == 33);
    CHECK(in.curvature.size() == 10);
}

TEST_CASE("audit classifies the headline cases")
{
    const AuditInputs in = load_inputs();
    AuditOptions opt;
    opt.weight_search = false;
    const AuditReport r = audit(space(), in, opt);
    auto find = [&](const std::string &rels) -> const AuditedCase & {
        const std::string k = canonicalize(space(), closed(rels)).key;
        for (const auto &a : r.cases)
            if (a.c.key == k)
                return a;
        FAIL("case not found");
        return r.cases.front();
    };
    const AuditedCase &c1 = find("a=f^-1");
    CHECK(c1.exact.kind == Coverage::WeightTest);
    CHECK(std::find(c1.exact.sources.begin(), c1.exact.sources.end(), "L3.1/1") != c1.exact.sources.end());
    const AuditedCase &c2 = find("a=f, e=i");
    CHECK(c2.exact.kind == Coverage::Curvature);
    CHECK(c2.exact.sources.front().rfind("L3.2/", 0) == 0);
    const AuditedCase &c0 = find("");
    CHECK(c0.exact.kind == Coverage::Counting);

    std::size_t total = 0;
    for (const auto &[k, n] : r.exact_counts)
        total += n;
    CHECK(total == r.cases.size());
    // Monotone reading never classifies worse than the exact one.
    for (const auto &a : r.cases)
        CHECK(static_cast<int>(a.monotone.kind) <= static_cast<int>(a.exact.kind));

    const AuditReport again = audit(space(), in, opt);
    CHECK(render_audit_text(again) == render_audit_text(r));
}
