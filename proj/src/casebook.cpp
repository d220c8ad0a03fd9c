#include "aspher/casebook.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aspher {

// ---------------------------------------------------------------- case space

CaseSpace::CaseSpace(const Equation &e) : equation(e), fixed_identity(e.fixed_identity)
{
    equation.fixed_identity = 0;
    const StarGraph g(presentation_of(equation));
    labels = degree2_labels(g, equation.nontrivial);
    if (labels.size() > 32)
        throw std::invalid_argument("more than 32 degree-2 labels");
    for (const auto &w : labels) {
        const auto r = relation_for_label(w);
        if (!r)
            throw std::invalid_argument("label " + w.render() + " gives no single relation");
        relations.push_back(*r);
    }
    group = stabilizer_maps(equation);
}

std::optional<std::size_t> CaseSpace::index_of(const CoeffWord &w) const
{
    const CoeffWord c = w.canonical_cyclic();
    const auto it = std::lower_bound(labels.begin(), labels.end(), c);
    if (it == labels.end() || *it != c)
        return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

std::optional<LabelMask> CaseSpace::closure(const std::vector<Relation> &rs) const
{
    const AssertResult h = hypothesis_from(rs, equation.nontrivial);
    if (std::holds_alternative<Contradiction>(h))
        return std::nullopt;
    LabelMask m = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (classify_word(std::get<Hypothesis>(h), labels[i]).kind == WordClass::Kind::Trivial)
            m |= LabelMask{1} << i;
    return m;
}

std::optional<LabelMask> CaseSpace::closure(LabelMask m) const { return closure(relations_of(m)); }

std::vector<Relation> CaseSpace::relations_of(LabelMask m) const
{
    std::vector<Relation> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (m & (LabelMask{1} << i))
            out.push_back(relations[i]);
    return out;
}

LabelMask CaseSpace::act(const SymbolMap &sigma, LabelMask m) const
{
    LabelMask out = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!(m & (LabelMask{1} << i)))
            continue;
        const auto j = index_of(sigma.apply(labels[i]));
        if (!j)
            throw std::logic_error("symmetry " + sigma.render() + " moves " + labels[i].render() + " out of S");
        out |= LabelMask{1} << *j;
    }
    return out;
}

std::string CaseSpace::key(LabelMask m) const
{
    std::string k;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!(m & (LabelMask{1} << i)))
            continue;
        if (!k.empty())
            k += ',';
        k += labels[i].render();
    }
    return k;
}

CanonicalCase canonicalize(const CaseSpace &space, LabelMask m)
{
    const auto closed = space.closure(m);
    if (!closed)
        throw std::invalid_argument("labels {" + space.key(m) + "} are inconsistent");
    if (*closed != m)
        throw std::invalid_argument("labels {" + space.key(m) + "} are not closed; closure is {" +
                                    space.key(*closed) + "}");
    CanonicalCase best{m, space.key(m), std::popcount(m)};
    for (const SymbolMap &sigma : space.group) {
        const LabelMask image = space.act(sigma, m);
        const std::string k = space.key(image);
        if (k < best.key)
            best = {image, k, best.n};
    }
    return best;
}

std::vector<CanonicalCase> enumerate_cases(const CaseSpace &space)
{
    std::map<std::string, CanonicalCase> seen;
    const LabelMask limit = LabelMask{1} << space.labels.size();
    for (LabelMask m = 0; m < limit; ++m) {
        const auto c = space.closure(m);
        if (!c || *c != m)
            continue;
        const CanonicalCase cc = canonicalize(space, m);
        seen.emplace(cc.key, cc);
    }
    std::vector<CanonicalCase> out;
    for (auto &[k, c] : seen)
        out.push_back(c);
    std::sort(out.begin(), out.end(), [](const CanonicalCase &a, const CanonicalCase &b) {
        return a.n != b.n ? a.n < b.n : a.key < b.key;
    });
    return out;
}

// --------------------------------------------------------------- case items

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<CaseItem> parse_case_items(std::string_view text)
{
    std::vector<CaseItem> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s.front() == '#')
            continue;
        if (s.rfind("@note", 0) == 0) {
            if (out.empty())
                throw ParseError("@note before any item", line_no, 1);
            out.back().notes.push_back(trim(std::string_view(s).substr(5)));
            continue;
        }
        const auto colon = s.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected '<id>: <conditions>'", line_no, 1);
        CaseItem item;
        item.id = trim(std::string_view(s).substr(0, colon));
        std::string body = trim(std::string_view(s).substr(colon + 1));
        item.text = body;
        std::string rels = body;
        const auto semi = body.find(';');
        try {
            if (semi != std::string::npos) {
                rels = trim(std::string_view(body).substr(0, semi));
                std::string rest = trim(std::string_view(body).substr(semi + 1));
                if (rest.rfind("R in", 0) != 0)
                    throw ParseError("expected 'R in {...}' after ';'", line_no, semi + 1);
                const auto open = rest.find('{');
                const auto close = rest.find('}');
                if (open == std::string::npos || close == std::string::npos || close < open)
                    throw ParseError("unbalanced braces in R list", line_no, semi + 1);
                std::string list = rest.substr(open + 1, close - open - 1);
                std::string word;
                std::istringstream ls(list);
                while (std::getline(ls, word, ','))
                    if (!trim(word).empty())
                        item.choices.push_back(parse_word(trim(word)));
                if (item.choices.empty())
                    throw ParseError("empty R list", line_no, semi + 1);
            }
            item.fixed = parse_relations(rels);
        } catch (const ParseError &err) {
            throw ParseError(err.message, line_no, err.column);
        } catch (const std::invalid_argument &err) {
            throw ParseError(err.what(), line_no, colon + 1);
        }
        out.push_back(std::move(item));
    }
    return out;
}

std::vector<ItemVariant> expand(const CaseItem &item)
{
    if (item.choices.empty())
        return {{item.id, item.fixed}};
    std::vector<ItemVariant> out;
    for (const CoeffWord &w : item.choices) {
        ItemVariant v{item.id + "[" + w.render() + "]", item.fixed};
        const auto r = relation_for_label(w);
        if (!r)
            throw std::invalid_argument("item " + item.id + ": label " + w.render() + " gives no relation");
        v.relations.push_back(*r);
        out.push_back(std::move(v));
    }
    return out;
}

CurvatureLemma load_curvature_lemma(std::string_view json_text)
{
    const CertificateScript script = parse_certificate_script(json_text);
    CurvatureLemma out;
    out.lemma = script.lemma;
    std::string items;
    for (std::size_t i = 0; i < script.items.size(); ++i)
        items += std::to_string(i + 1) + ": " + script.items[i] + "\n";
    out.items = parse_case_items(items);
    if (!script.steps.empty())
        out.certificate = check_script(script);
    return out;
}

// --------------------------------------------------------------------- audit

std::string coverage_name(Coverage c)
{
    switch (c) {
    case Coverage::WeightTest:
        return "weight-test";
    case Coverage::Curvature:
        return "curvature";
    case Coverage::Counting:
        return "counting";
    case Coverage::Exceptional:
        return "exceptional";
    case Coverage::Unaccounted:
        return "unaccounted";
    }
    return {};
}

namespace {

struct Matched {
    std::string id;
    LabelMask mask;
};

Classification classify(const std::vector<std::string> &w, const std::vector<std::string> &c, int corners,
                        const std::vector<std::string> &x)
{
    if (!w.empty())
        return {Coverage::WeightTest, w};
    if (!c.empty())
        return {Coverage::Curvature, c};
    if (corners <= 3)
        return {Coverage::Counting, {"k=" + std::to_string(corners)}};
    if (!x.empty())
        return {Coverage::Exceptional, x};
    return {Coverage::Unaccounted, {}};
}

std::string search_outcome(const Equation &e, const std::vector<Relation> &rels, const AuditOptions &opt)
{
    const AssertResult h0 = hypothesis_from(rels, e.nontrivial);
    if (std::holds_alternative<Contradiction>(h0))
        return "hypothesis is contradictory";
    const AssertResult h1 = with_fixed_identity(e, std::get<Hypothesis>(h0));
    if (const auto *c = std::get_if<Contradiction>(&h1))
        return "contradiction with fixed identity: " + c->describe();
    const Hypothesis &h = std::get<Hypothesis>(h1);
    const Relator spec = specialize(e, h);
    const auto slot = auto_split_slot(spec);
    const Presentation p = slot ? split_transform(spec, *slot) : Presentation{"t", {spec}};
    const StarGraph g(p);
    const SearchResult res = search(g, h, opt.domain, opt.cap);
    std::string where = slot ? "split at slot " + std::to_string(*slot) : "unsplit";
    if (!res.theta)
        return "not found (" + where + "): " + res.reason;
    std::string theta;
    for (const Rational &w : res.theta->weights)
        theta += (theta.empty() ? "" : ",") + render_rational(w);
    return "pass (" + where + ") theta=" + theta;
}

}  // namespace

AuditReport audit(const CaseSpace &space, const AuditInputs &in, const AuditOptions &opt)
{
    AuditReport rep;
    const std::vector<CanonicalCase> cases = enumerate_cases(space);
    std::map<std::string, std::size_t> by_key;
    for (const CanonicalCase &c : cases) {
        AuditedCase a;
        a.c = c;
        SymbolMask corners = 0;
        for (std::size_t i = 0; i < space.labels.size(); ++i)
            if (c.mask & (LabelMask{1} << i))
                for (const auto &l : space.labels[i].letters())
                    corners |= symbol_bit(l.symbol);
        a.corners = std::popcount(corners);
        by_key[c.key] = rep.cases.size();
        rep.cases.push_back(std::move(a));
    }

    // Resolve every item variant to its closure.
    auto resolve = [&](const std::string &prefix, const std::vector<CaseItem> &items) {
        std::vector<Matched> out;
        for (const CaseItem &item : items) {
            for (const std::string &n : item.notes)
                rep.discrepancies.push_back(prefix + item.id + ": transcription note: " + n);
            for (const ItemVariant &v : expand(item)) {
                const auto m = space.closure(v.relations);
                if (!m) {
                    const auto h = hypothesis_from(v.relations, space.equation.nontrivial);
                    rep.discrepancies.push_back(prefix + v.id + " (" + render_relations(v.relations) +
                                                ") is contradictory: " + std::get<Contradiction>(h).describe());
                    continue;
                }
                out.push_back({prefix + v.id, *m});
            }
        }
        return out;
    };
    const std::vector<Matched> weight = resolve("L3.1/", in.weight_items);
    std::vector<Matched> curv;
    for (const CurvatureLemma &l : in.curvature) {
        const auto m = resolve("L" + l.lemma + "/", l.items);
        curv.insert(curv.end(), m.begin(), m.end());
        std::string line = "lemma " + l.lemma + ": ";
        if (!l.certificate) {
            line += "no certificate";
        } else if (l.certificate->contradiction) {
            line += "hypothesis contradictory (" + l.certificate->contradiction->describe() + ")";
        } else {
            line += std::to_string(l.certificate->steps.size()) + " steps, " +
                    std::to_string(l.certificate->count(StepResult::Verdict::Verified)) + " verified, " +
                    std::to_string(l.certificate->count(StepResult::Verdict::AssumptionDependent)) +
                    " assumption-dependent, " +
                    std::to_string(l.certificate->count(StepResult::Verdict::Refuted)) + " refuted";
        }
        rep.certificates.push_back(line);
    }
    const std::vector<Matched> exc = resolve("E", in.exceptions);
    rep.exception_entries = in.exceptions.size();
    for (const CaseItem &item : in.exceptions)
        rep.exception_variants += expand(item).size();

    auto key_of = [&](LabelMask m) { return canonicalize(space, m).key; };
    auto contains = [&](LabelMask big, LabelMask small) {
        for (const SymbolMap &s : space.group)
            if ((space.act(s, small) & ~big) == 0)
                return true;
        return false;
    };
    std::vector<std::vector<std::string>> mw(cases.size()), mc(cases.size()), mx(cases.size());
    auto place = [&](const std::vector<Matched> &ms, auto member, std::vector<std::vector<std::string>> &mono) {
        for (const Matched &m : ms) {
            (rep.cases[by_key.at(key_of(m.mask))].*member).push_back(m.id);
            for (std::size_t i = 0; i < cases.size(); ++i)
                if (contains(cases[i].mask, m.mask))
                    mono[i].push_back(m.id);
        }
    };
    place(weight, &AuditedCase::weight, mw);
    place(curv, &AuditedCase::curvature, mc);
    place(exc, &AuditedCase::exception, mx);

    Equation searched = space.equation;
    searched.fixed_identity = space.fixed_identity;
    for (std::size_t i = 0; i < rep.cases.size(); ++i) {
        AuditedCase &a = rep.cases[i];
        a.exact = classify(a.weight, a.curvature, a.corners, a.exception);
        a.monotone = classify(mw[i], mc[i], a.corners, mx[i]);
        ++rep.exact_counts[coverage_name(a.exact.kind)];
        ++rep.monotone_counts[coverage_name(a.monotone.kind)];
        if (opt.weight_search && a.exact.kind == Coverage::WeightTest) {
            // The first matching item fixes the orientation the search uses.
            const std::string &id = a.weight.front();
            for (const CaseItem &item : in.weight_items)
                for (const ItemVariant &v : expand(item))
                    if ("L3.1/" + v.id == id && !a.weight_search)
                        a.weight_search = search_outcome(searched, v.relations, opt);
        }
    }

    // Exceptions that a lemma or the counting bound already settles, and
    // exceptions that describe the same case twice.
    std::map<std::string, std::vector<std::string>> exc_by_key;
    for (const Matched &m : exc)
        exc_by_key[key_of(m.mask)].push_back(m.id);
    for (const auto &[k, ids] : exc_by_key) {
        const AuditedCase &a = rep.cases[by_key.at(k)];
        std::string joined;
        for (const auto &id : ids)
            joined += (joined.empty() ? "" : ", ") + id;
        if (ids.size() > 1)
            rep.discrepancies.push_back("exceptions " + joined + " are the same case {" + k + "} up to symmetry");
        if (a.exact.kind != Coverage::Exceptional) {
            std::string src;
            for (const auto &s : a.exact.sources)
                src += (src.empty() ? "" : ", ") + s;
            rep.discrepancies.push_back("exception " + joined + " {" + k + "} is also covered: " +
                                        coverage_name(a.exact.kind) + " " + src);
        }
    }
    for (const AuditedCase &a : rep.cases)
        if (a.exact.kind == Coverage::Unaccounted)
            rep.discrepancies.push_back("case {" + a.c.key + "} matches no item exactly; monotone reading: " +
                                        coverage_name(a.monotone.kind));
    for (const AuditedCase &a : rep.cases)
        if (a.weight_search && a.weight_search->rfind("pass", 0) != 0)
            rep.discrepancies.push_back("weight-test case {" + a.c.key + "}: search over the domain " +
                                        *a.weight_search);
    return rep;
}

std::string render_audit_text(const AuditReport &r)
{
    std::ostringstream os;
    os << "cases: " << r.cases.size() << "\n";
    for (std::size_t i = 0; i < r.cases.size(); ++i) {
        const AuditedCase &a = r.cases[i];
        auto srcs = [](const Classification &c) {
            std::string s;
            for (const auto &x : c.sources)
                s += (s.empty() ? "" : " ") + x;
            return s.empty() ? coverage_name(c.kind) : coverage_name(c.kind) + "(" + s + ")";
        };
        os << "case " << i << " N=" << a.c.n << " k=" << a.corners << " {" << a.c.key << "}\n";
        os << "  exact: " << srcs(a.exact) << "\n";
        os << "  monotone: " << srcs(a.monotone) << "\n";
        if (a.weight_search)
            os << "  weight search: " << *a.weight_search << "\n";
    }
    os << "summary (exact):";
    for (const auto &[k, n] : r.exact_counts)
        os << " " << k << "=" << n;
    os << "\nsummary (monotone):";
    for (const auto &[k, n] : r.monotone_counts)
        os << " " << k << "=" << n;
    os << "\nexception entries: " << r.exception_entries << " (" << r.exception_variants << " variants)\n";
    os << "certificates:\n";
    for (const auto &c : r.certificates)
        os << "  " << c << "\n";
    os << "discrepancies: " << r.discrepancies.size() << "\n";
    for (const auto &d : r.discrepancies)
        os << "  - " << d << "\n";
    return os.str();
}

}  // namespace aspher
