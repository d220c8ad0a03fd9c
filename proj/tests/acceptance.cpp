// One line per acceptance criterion; exit status is nonzero if any fails.

#include "aspher/casebook.hpp"
#include "aspher/cli.hpp"
#include "aspher/congruence.hpp"
#include "aspher/curvature.hpp"
#include "aspher/stargraph.hpp"
#include "aspher/weight.hpp"
#include "aspher/words.hpp"

#include "oracles.hpp"

#include <json.hpp>

#include <array>
#include <bit>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace aspher;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Records the first failed check; later checks still run.
struct Checker {
    Outcome o;
    void expect(bool cond, const std::string &what)
    {
        if (!cond && o.ok) {
            o.ok = false;
            o.detail = what;
        }
    }
};

const std::string kData = ASPHER_DATA_DIR;

Equation flagship() { return parse_equation(oracle::read_file(kData + "/equation.eq")); }

std::string run_cli_capture(std::vector<std::string> args, int &code)
{
    args.insert(args.begin(), "aspher");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

std::set<CoeffWord> canonical_set(const std::vector<std::string> &words)
{
    std::set<CoeffWord> s;
    for (const auto &w : words)
        s.insert(parse_word(w).canonical_cyclic());
    return s;
}

// ------------------------------------------------------------- criterion 1

Outcome s_reproduction()
{
    Checker c;
    int code = 0;
    const auto j = nlohmann::json::parse(run_cli_capture({"--format", "json", "stargraph", kData + "/equation.eq"}, code));
    c.expect(code == 0, "stargraph exit code " + std::to_string(code));
    std::vector<std::string> got = j["S"];
    const auto printed = canonical_set({"af", "af^-1", "ei", "ei^-1", "hb^-1", "hc^-1", "hd^-1", "hg^-1", "gb^-1",
                                        "gc^-1", "gd^-1", "db^-1", "dc^-1", "cb^-1"});
    c.expect(got.size() == 14, "S has " + std::to_string(got.size()) + " labels");
    c.expect(canonical_set(got) == printed, "S differs from the printed set");
    return c.o;
}

// ------------------------------------------------------------- criterion 2

Outcome remark_suite()
{
    Checker c;
    const Equation e = flagship();
    const SymbolMask nt = e.nontrivial;
    const auto rel = [](const std::string &label) { return *relation_for_label(parse_word(label)); };

    // 1: no degree-2 corner.
    c.expect(curvature(std::vector<int>(9, 3)).render() == "-pi", "item 1: c(3^9) != -pi");

    // 2, 3: both orientations force a square to be trivial.
    for (const auto &[x, witness] : std::vector<std::pair<std::string, std::string>>{{"a", "f^2=1"}, {"e", "i^2=1"}}) {
        const std::string y = x == "a" ? "f" : "i";
        const auto h = hypothesis_from({rel(x + y), rel(x + y + "^-1")}, nt);
        const auto *ct = std::get_if<Contradiction>(&h);
        c.expect(ct != nullptr, "item " + x + y + ": no contradiction");
        if (ct)
            c.expect(ct->describe() == witness, "witness " + ct->describe() + " instead of " + witness);
    }

    // 4: every three of af, af^-1, ei, ei^-1 are inconsistent; some two are not.
    const std::vector<std::string> four{"af", "af^-1", "ei", "ei^-1"};
    int consistent_pairs = 0;
    for (unsigned m = 0; m < 16; ++m) {
        std::vector<Relation> rs;
        for (unsigned k = 0; k < 4; ++k)
            if (m & (1u << k))
                rs.push_back(rel(four[k]));
        const bool contra = std::holds_alternative<Contradiction>(hypothesis_from(rs, nt));
        if (std::popcount(m) >= 3)
            c.expect(contra, "item 4: three labels consistent");
        if (std::popcount(m) == 2 && !contra)
            ++consistent_pairs;
    }
    c.expect(consistent_pairs == 4, "item 4: expected four consistent pairs");

    // 5-14: any two of a triad force the third.
    const std::vector<std::array<std::string, 3>> triads{
        {"hb^-1", "hc^-1", "cb^-1"}, {"hb^-1", "hd^-1", "db^-1"}, {"hb^-1", "hg^-1", "gb^-1"},
        {"hc^-1", "hd^-1", "dc^-1"}, {"hc^-1", "hg^-1", "gc^-1"}, {"hd^-1", "hg^-1", "gd^-1"},
        {"gb^-1", "gc^-1", "cb^-1"}, {"gb^-1", "gd^-1", "db^-1"}, {"gc^-1", "gd^-1", "dc^-1"},
        {"dc^-1", "db^-1", "cb^-1"}};
    for (std::size_t t = 0; t < triads.size(); ++t) {
        for (int skip = 0; skip < 3; ++skip) {
            std::vector<Relation> rs;
            for (int k = 0; k < 3; ++k)
                if (k != skip)
                    rs.push_back(rel(triads[t][static_cast<std::size_t>(k)]));
            const auto h = hypothesis_from(rs, nt);
            const auto *hyp = std::get_if<Hypothesis>(&h);
            const std::string name = "item " + std::to_string(t + 5);
            c.expect(hyp != nullptr, name + ": contradiction");
            if (hyp)
                c.expect(classify_word(*hyp, parse_word(triads[t][static_cast<std::size_t>(skip)])).kind ==
                             WordClass::Kind::Trivial,
                         name + ": third label not forced");
        }
    }
    return c.o;
}

// ------------------------------------------------------------- criterion 3

Outcome curvature_values()
{
    Checker c;
    const std::vector<std::pair<std::vector<int>, Rational>> cases{
        {{3, 3, 3, 3, 3, 3, 3, 3, 3}, Rational(-1)},
        {{2, 2, 3, 3, 3, 3, 3, 3, 3}, Rational(-1, 3)},
        {{2, 2, 3, 3, 3, 3, 3, 3, 4}, Rational(-1, 2)},
        {{2, 2, 2, 3, 3, 3, 3, 3, 4}, Rational(-1, 6)},
        {{2, 2, 2, 3, 3, 3, 3, 4, 4}, Rational(-1, 3)},
    };
    for (const auto &[d, want] : cases) {
        const CurvatureValue v = curvature(d);
        c.expect(v.q == want, "curvature " + v.render() + " != " + CurvatureValue{want}.render());
    }
    c.expect(curvature_bound(9, 4, 3).q == Rational(1, 3), "four degree-2 corners: bound != pi/3");
    const std::vector<int> extra{4};
    c.expect(curvature_bound(9, 4, 3, extra).q == Rational(1, 6), "with one corner >= 4: bound != pi/6");
    return c.o;
}

// ------------------------------------------------------------- criterion 4

Outcome weight_case_one()
{
    Checker c;
    const Equation e = flagship();
    const Hypothesis h = std::get<Hypothesis>(
        with_fixed_identity(e, std::get<Hypothesis>(hypothesis_from(parse_relations("a=f^-1"), e.nontrivial))));
    const Relator spec = specialize(e, h);
    // The a-slot: the slot carrying a^-1 after specialization.
    std::optional<std::size_t> a_slot;
    for (std::size_t k = 0; k < spec.size(); ++k)
        if (spec.slots[k].coeff == parse_word("a^-1"))
            a_slot = k;
    c.expect(a_slot.has_value(), "no a^-1 slot");
    if (!a_slot)
        return c.o;
    c.expect(auto_split_slot(spec) == a_slot, "auto split does not pick the a-slot");
    const Presentation p = split_transform(spec, *a_slot);
    const StarGraph g(p);
    std::multiset<std::string> m0, m1;
    for (const Edge &ed : g.edges())
        (ed.relator == 0 ? m0 : m1).insert(ed.label.empty() ? "1" : ed.label.render());
    c.expect(m0 == std::multiset<std::string>{"1", "c", "d", "e", "g", "h", "i"}, "v1 label multiset");
    c.expect(m1 == std::multiset<std::string>{"a^-1", "1", "1"}, "v2 label multiset");

    const WeightFunction theta =
        parse_weight_function(oracle::read_file(kData + "/theta/lemma31_case1.theta"), g.edges().size());
    const WeightTestReport r = verify(g, theta, h);
    c.expect(r.verdict == WeightTestReport::Verdict::Pass, "printed theta: " + verdict_name(r.verdict) + " " + r.reason);
    c.expect(r.relator_sums == std::vector<Rational>{Rational(2), Rational(2)}, "relator sums are not (2,2)");

    int code = 0;
    const auto j = nlohmann::json::parse(run_cli_capture(
        {"--format", "json", "--domain", "0,1", "weight", kData + "/equation.eq", "--hyp", "a=f^-1", "--search"},
        code));
    c.expect(code == 0 && j["found"] == true, "search over {0,1} found nothing");
    if (j["found"] == true)
        c.expect(j["report"]["verdict"] == "pass", "searched theta does not pass");
    return c.o;
}

// ------------------------------------------------------------- criterion 5

Outcome oracle_equivalence()
{
    Checker c;
    // Every set of at most five relations from a 30-relation universe on 5
    // symbols, two of them nontrivial.
    const SymbolMask nt = symbol_bit(0) | symbol_bit(1);
    std::vector<Relation> universe;
    for (Symbol x = 0; x < 5; ++x) {
        universe.push_back(Relation::trivial(x));
        universe.push_back(Relation::equal_inverse(x, x));
        for (Symbol y = static_cast<Symbol>(x + 1); y < 5; ++y) {
            universe.push_back(Relation::equal(x, y));
            universe.push_back(Relation::equal_inverse(x, y));
        }
    }
    std::size_t checked = 0;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> visit = [&](std::size_t start) {
        std::vector<Relation> rs;
        for (std::size_t i : pick)
            rs.push_back(universe[i]);
        const auto fast = hypothesis_from(rs, nt);
        const auto slow = brute_closure(rs, nt);
        const bool fc = std::holds_alternative<Contradiction>(fast);
        c.expect(fc == slow.contradictory(), "contradiction disagrees on " + render_relations(rs));
        if (!fc && !slow.contradictory()) {
            const auto part = std::get<Hypothesis>(fast).partition();
            for (std::size_t s = 0; s < 5; ++s)
                c.expect(part[s] == slow.partition[s], "partition disagrees on " + render_relations(rs));
        }
        ++checked;
        if (pick.size() == 5)
            return;
        for (std::size_t i = start; i < universe.size(); ++i) {
            pick.push_back(i);
            visit(i + 1);
            pick.pop_back();
        }
    };
    visit(0);
    c.expect(universe.size() == 30, "universe size");
    c.expect(checked == 174437, "checked " + std::to_string(checked) + " relation sets");

    const StarGraph g(presentation_of(flagship()));
    const auto plain = oracle::plain_edges(
        {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", -1}, {"f", 1}, {"g", 1}, {"h", 1}, {"i", -1}});
    for (int len = 1; len <= 4; ++len) {
        std::set<std::vector<std::pair<int, int>>> mine;
        for (const auto &w : reduced_closed_walks(g, len)) {
            std::vector<std::pair<int, int>> s;
            for (auto t : w.steps)
                s.push_back({t.edge, t.dir});
            mine.insert(s);
        }
        c.expect(mine == oracle::brute_reduced_walks(plain, len), "walks differ at length " + std::to_string(len));
    }
    return c.o;
}

// ------------------------------------------------------------- criterion 6

Outcome symmetry_soundness()
{
    Checker c;
    const Equation e = flagship();
    const CaseSpace space(e);
    c.expect(space.group.size() >= 2, "symmetry group is trivial");

    // Every single relation x=y, x=y^-1, x=1 over the alphabet.
    std::vector<Relation> singles;
    for (Symbol x = 0; x < 9; ++x) {
        singles.push_back(Relation::trivial(x));
        singles.push_back(Relation::equal_inverse(x, x));
        for (Symbol y = static_cast<Symbol>(x + 1); y < 9; ++y) {
            singles.push_back(Relation::equal(x, y));
            singles.push_back(Relation::equal_inverse(x, y));
        }
    }
    std::size_t checked = 0;
    for (const Relation &r : singles) {
        const auto m = space.closure(std::vector<Relation>{r});
        if (!m)
            continue;
        const std::string k = canonicalize(space, *m).key;
        for (const SymbolMap &s : space.group) {
            c.expect(canonicalize(space, space.act(s, *m)).key == k, "orbit key differs for " + r.render());
            ++checked;
        }
    }
    c.expect(checked > 0, "no single-relation hypotheses checked");

    // S commutes with the moves: rotations, inversion, t-flip and relabelings.
    const auto s_of = [](const Equation &eq) {
        const auto v = degree2_labels(StarGraph(presentation_of(eq)), eq.nontrivial);
        return std::set<CoeffWord>(v.begin(), v.end());
    };
    const auto base = s_of(e);
    for (std::size_t k = 0; k < e.relator.size(); ++k)
        c.expect(s_of(apply_move(e, SymmetryMove::rotate_by(k))) == base, "rotation changes S");
    c.expect(s_of(apply_move(e, SymmetryMove::inversion())) == base, "inversion changes S");
    c.expect(s_of(apply_move(e, SymmetryMove::t_flip())) == base, "t-flip changes S");
    std::vector<SymbolMap> maps = space.group;
    maps.push_back(SymbolMap::parse_pairs("a<->e^-1, b<->d^-1, c<->c^-1, f<->i^-1, g<->h^-1"));
    maps.push_back(SymbolMap::parse_pairs("a<->b, c<->i^-1, d<->e"));
    for (const SymbolMap &s : maps) {
        Equation full = e;
        SymbolMap total = s;
        for (Symbol x = 0; x < 9; ++x)
            if (!s.image(x))
                total.set(x, SignedSymbol{x, 1});
        std::set<CoeffWord> want;
        for (const auto &w : base)
            want.insert(total.apply(w).canonical_cyclic());
        c.expect(s_of(apply_move(full, SymmetryMove::relabel(total))) == want, "relabeling " + s.render());
    }
    return c.o;
}

// ------------------------------------------------------------- criterion 7

Outcome audit_totality()
{
    Checker c;
    int code1 = 0, code2 = 0;
    const std::string a = run_cli_capture({"--format", "json", "audit", kData}, code1);
    const std::string b = run_cli_capture({"--format", "json", "audit", kData}, code2);
    c.expect(code1 == 0 && code2 == 0, "audit exit code");
    c.expect(a == b, "audit output differs between runs");
    const auto j = nlohmann::json::parse(a);

    const CaseSpace space(flagship());
    const auto cases = enumerate_cases(space);
    c.expect(j["cases"].size() == cases.size(), "audit does not list every enumerated case");
    std::set<std::string> keys;
    std::size_t total = 0;
    for (const auto &[k, n] : j["exact_counts"].items())
        total += n.get<std::size_t>();
    c.expect(total == cases.size(), "exact counts do not sum to the case count");
    for (std::size_t i = 0; i < cases.size() && i < j["cases"].size(); ++i) {
        c.expect(j["cases"][i]["labels"] == cases[i].key, "case order differs at " + std::to_string(i));
        c.expect(keys.insert(j["cases"][i]["labels"]).second, "case listed twice");
    }

    // Every printed exception variant lands in an exceptional case or is
    // named in the discrepancy section.
    c.expect(j["exception_entries"] == 33, "exception list does not have 33 entries");
    std::string disc;
    for (const auto &d : j["discrepancies"])
        disc += d.get<std::string>() + "\n";
    const auto items = parse_case_items(oracle::read_file(kData + "/exceptions.cases"));
    for (const CaseItem &it : items) {
        for (const ItemVariant &v : expand(it)) {
            const auto m = space.closure(v.relations);
            if (!m) {
                c.expect(disc.find("E" + v.id + " ") != std::string::npos, "inconsistent E" + v.id + " not reported");
                continue;
            }
            const std::string key = canonicalize(space, *m).key;
            bool bucketed = false;
            for (const auto &cs : j["cases"])
                if (cs["labels"] == key)
                    bucketed = cs["exact"]["kind"] == "exceptional";
            c.expect(bucketed || disc.find("E" + v.id) != std::string::npos,
                     "E" + v.id + " neither exceptional nor reported");
        }
    }
    return c.o;
}

// ------------------------------------------------------------- criterion 8

Outcome certificates()
{
    Checker c;
    for (const char *lemma : {"3_2", "3_4"}) {
        const std::string name = std::string("lemma ") + lemma;
        const CertificateScript base =
            parse_certificate_script(oracle::read_file(kData + "/curvature.lemmas/lemma_" + lemma + ".json"));
        const ScriptResult r = check_script(base);
        c.expect(r.has_certificate(), name + " has no steps");
        c.expect(r.count(StepResult::Verdict::Refuted) == 0, name + " has refuted steps");

        std::size_t mutations = 0;
        for (std::size_t si = 0; si < base.steps.size(); ++si) {
            auto refuted_after = [&](const std::function<void(DistributionStep &)> &edit) {
                CertificateScript m = base;
                edit(m.steps[si]);
                ++mutations;
                return check_script(m).count(StepResult::Verdict::Refuted) > 0;
            };
            const std::string at = name + " step " + base.steps[si].id;
            for (std::size_t k = 0; k < base.steps[si].delta.degrees.size(); ++k)
                for (int d : {-1, 1}) {
                    c.expect(refuted_after([&](DistributionStep &s) { s.delta.degrees[k] += d; }),
                             at + ": degree mutation at corner " + std::to_string(k) + " not refuted");
                    if (base.steps[si].hat_degrees)
                        c.expect(refuted_after([&](DistributionStep &s) { (*s.hat_degrees)[k] += d; }),
                                 at + ": hat degree mutation at corner " + std::to_string(k) + " not refuted");
                }
            for (int d : {-1, 1}) {
                c.expect(refuted_after([&](DistributionStep &s) { s.bound += d; }), at + ": bound mutation not refuted");
                if (base.steps[si].hat_value)
                    c.expect(refuted_after([&](DistributionStep &s) { *s.hat_value += d; }),
                             at + ": hat value mutation not refuted");
            }
        }
        c.expect(mutations > 0, name + ": no mutations tried");
    }
    return c.o;
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        double limit_s;
        Outcome (*run)();
    };
    const std::vector<Criterion> all{
        {1, "S reproduction", 1.0, s_reproduction},
        {2, "Remark 1 suite", 1.0, remark_suite},
        {3, "curvature values", 1.0, curvature_values},
        {4, "weight test, case 1", 10.0, weight_case_one},
        {5, "oracle equivalence", 60.0, oracle_equivalence},
        {6, "symmetry soundness", 10.0, symmetry_soundness},
        {7, "audit determinism and totality", 300.0, audit_totality},
        {8, "certificate checking", 10.0, certificates},
    };
    int failed = 0;
    for (const Criterion &cr : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && secs > cr.limit_s)
            o = {false, "took longer than the limit"};
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << (o.ok ? "PASS" : "FAIL") << " " << cr.id << " " << cr.name << " (" << secs << " s, limit "
             << cr.limit_s << " s)";
        if (!o.ok)
            line << ": " << o.detail;
        std::cout << line.str() << "\n";
        failed += o.ok ? 0 : 1;
    }
    return failed ? 1 : 0;
}
