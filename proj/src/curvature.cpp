#include "aspher/curvature.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace aspher {

std::string CurvatureValue::render() const
{
    const auto num = q.numerator();
    const auto den = q.denominator();
    if (num == 0)
        return "0";
    std::string s = num < 0 ? "-" : "";
    const auto mag = num < 0 ? -num : num;
    if (mag != 1)
        s += std::to_string(mag);
    s += "pi";
    if (den != 1)
        s += "/" + std::to_string(den);
    return s;
}

CurvatureValue curvature(std::span<const int> degrees)
{
    Rational q(2 - static_cast<std::int64_t>(degrees.size()));
    for (int d : degrees) {
        if (d < 2)
            throw std::invalid_argument("corner degree " + std::to_string(d) + " is below 2");
        q += Rational(2, d);
    }
    return {q};
}

CurvatureValue curvature_bound(int n, int fixed2, int min_rest, std::span<const int> extra)
{
    if (n < 1 || fixed2 < 0 || fixed2 + static_cast<int>(extra.size()) > n)
        throw std::invalid_argument("inconsistent corner counts");
    if (min_rest < 2)
        throw std::invalid_argument("lower bound below 2");
    std::vector<int> d(static_cast<std::size_t>(fixed2), 2);
    d.insert(d.end(), extra.begin(), extra.end());
    d.resize(static_cast<std::size_t>(n), min_rest);
    return curvature(d);
}

std::string expect_name(LabelClaim::Expect e)
{
    switch (e) {
    case LabelClaim::Expect::Admissible:
        return "admissible";
    case LabelClaim::Expect::Possible:
        return "possible";
    case LabelClaim::Expect::Contradiction:
        return "contradiction";
    }
    return {};
}

std::string status_name(CornerVerdict::Status s)
{
    switch (s) {
    case CornerVerdict::Status::Admissible:
        return "admissible";
    case CornerVerdict::Status::Possible:
        return "possible";
    case CornerVerdict::Status::Contradiction:
        return "contradiction";
    case CornerVerdict::Status::Malformed:
        return "malformed";
    }
    return {};
}

std::string verdict_name(StepResult::Verdict v)
{
    switch (v) {
    case StepResult::Verdict::Verified:
        return "verified";
    case StepResult::Verdict::Refuted:
        return "refuted";
    case StepResult::Verdict::AssumptionDependent:
        return "assumption-dependent";
    }
    return {};
}

namespace {

CornerVerdict validate_claim(const StarGraph &g, const LabelClaim &c, const Hypothesis &h)
{
    CornerVerdict v;
    v.corner = c.corner;
    v.label = c.text;
    std::vector<SignedSymbol> letters;
    try {
        letters = parse_letters(c.text);
    } catch (const ParseError &err) {
        v.message = err.message;
        return v;
    }
    if (c.corner >= g.edges().size()) {
        v.message = "no corner " + std::to_string(c.corner);
        return v;
    }
    const Edge &own = g.edges()[c.corner];
    if (letters.empty() || own.label != CoeffWord({letters.front()})) {
        v.message = "label must begin with the corner's coefficient " + own.label.render();
        return v;
    }
    // Depth-first match of the remaining letters against edge labels.
    Steps walk{{own.id, 0}};
    std::function<bool(std::size_t)> match = [&](std::size_t i) {
        if (i == letters.size())
            return c.partial || g.target(walk.back()) == g.source(walk.front());
        const CoeffWord want({letters[i]});
        for (Traversal t : g.leaving(g.target(walk.back()))) {
            if (g.label(t) != want)
                continue;
            walk.push_back(t);
            if (match(i + 1))
                return true;
            walk.pop_back();
        }
        return false;
    };
    if (!match(1)) {
        v.message = c.partial ? "no walk in the star graph spells this prefix"
                              : "no closed walk in the star graph spells this label";
        return v;
    }
    v.walk = walk;
    bool reduced = true;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        reduced &= walk[i + 1] != walk[i].reversed();
    if (!c.partial && walk.size() > 1)
        reduced &= walk.front() != walk.back().reversed();
    v.reduced = reduced;
    v.cls = classify_word(h, CoeffWord(letters));
    if (c.partial)
        v.status = CornerVerdict::Status::Possible;
    else if (v.cls.kind == WordClass::Kind::Trivial)
        v.status = CornerVerdict::Status::Admissible;
    else if (refuted(h, v.cls))
        v.status = CornerVerdict::Status::Contradiction;
    else
        v.status = CornerVerdict::Status::Possible;
    return v;
}

}  // namespace

std::vector<CornerVerdict> validate_region(const StarGraph &g, const RegionConfig &cfg, const Hypothesis &h)
{
    std::vector<CornerVerdict> out;
    for (const LabelClaim &c : cfg.labels)
        out.push_back(validate_claim(g, c, h));
    return out;
}

StepResult check_distribution_step(const StarGraph &g, const Hypothesis &h, const DistributionStep &s)
{
    StepResult r;
    r.id = s.id;
    r.assumptions = s.assumptions;
    const auto &deg = s.delta.degrees;
    auto corner_name = [&](std::size_t k) {
        return k < g.edges().size() ? "v_" + g.edges()[k].label.render() : "corner " + std::to_string(k);
    };

    bool degrees_ok = deg.size() == g.edges().size();
    if (!degrees_ok)
        r.failures.push_back("expected " + std::to_string(g.edges().size()) + " corner degrees, got " +
                             std::to_string(deg.size()));
    for (std::size_t k = 0; k < deg.size(); ++k) {
        if (deg[k] < 2) {
            r.failures.push_back("degree " + std::to_string(deg[k]) + " at " + corner_name(k) + " is below 2");
            degrees_ok = false;
        }
    }
    if (degrees_ok) {
        r.computed_bound = curvature(deg);
        if (s.bound != r.computed_bound.q)
            r.failures.push_back("printed bound " + CurvatureValue{s.bound}.render() +
                                 " differs from the bound " + r.computed_bound.render() +
                                 " given by the degree constraints");
    }

    r.corners = validate_region(g, s.delta, h);
    std::vector<bool> admissible_corner(g.edges().size(), false);
    for (std::size_t i = 0; i < r.corners.size(); ++i) {
        const CornerVerdict &v = r.corners[i];
        const LabelClaim &c = s.delta.labels[i];
        const std::string where = corner_name(c.corner) + " label " + c.text;
        if (v.status == CornerVerdict::Status::Malformed) {
            r.failures.push_back(where + ": " + v.message);
            continue;
        }
        if (!v.reduced)
            r.notes.push_back(where + " is not a reduced walk");
        bool met = false;
        switch (c.expect) {
        case LabelClaim::Expect::Admissible:
            met = v.status == CornerVerdict::Status::Admissible;
            break;
        case LabelClaim::Expect::Possible:
            met = v.status == CornerVerdict::Status::Admissible || v.status == CornerVerdict::Status::Possible;
            break;
        case LabelClaim::Expect::Contradiction:
            met = v.status == CornerVerdict::Status::Contradiction;
            break;
        }
        if (!met)
            r.failures.push_back(where + " claimed " + expect_name(c.expect) + " but is " + status_name(v.status) +
                                 " (" + v.cls.render() + ")");
        if (c.corner >= deg.size())
            continue;
        const int len = static_cast<int>(v.walk.size());
        const int d = deg[c.corner];
        if (c.partial || c.expect == LabelClaim::Expect::Contradiction) {
            if (d < len + 1)
                r.failures.push_back(where + " rules out degree " + std::to_string(len) +
                                     " but the lower bound is " + std::to_string(d));
        } else if (d != len) {
            r.failures.push_back(where + " has length " + std::to_string(len) + " but the corner degree is " +
                                 std::to_string(d));
        }
        if (met && c.expect == LabelClaim::Expect::Admissible && !c.partial && len == 2)
            admissible_corner[c.corner] = true;
    }
    for (std::size_t k = 0; k < deg.size() && k < admissible_corner.size(); ++k)
        if (deg[k] == 2 && !admissible_corner[k])
            r.failures.push_back(corner_name(k) + " has degree 2 without an admissible label");

    if (s.hat_degrees) {
        try {
            r.computed_hat = curvature(*s.hat_degrees);
        } catch (const std::invalid_argument &err) {
            r.failures.push_back(std::string("Δ̂: ") + err.what());
        }
        if (r.computed_hat) {
            if (s.hat_value && *s.hat_value != r.computed_hat->q)
                r.failures.push_back("printed c(Δ̂) " + CurvatureValue{*s.hat_value}.render() + " differs from " +
                                     r.computed_hat->render());
            if (s.bound + r.computed_hat->q > Rational(0))
                r.failures.push_back("c(Δ̂) + bound = " + CurvatureValue{s.bound + r.computed_hat->q}.render() +
                                     " > 0");
        }
    } else if (s.bound > Rational(0)) {
        r.failures.push_back("bound " + CurvatureValue{s.bound}.render() + " > 0 with no Δ̂ to absorb it");
    }

    if (!r.failures.empty())
        r.verdict = StepResult::Verdict::Refuted;
    else if (!r.assumptions.empty())
        r.verdict = StepResult::Verdict::AssumptionDependent;
    else
        r.verdict = StepResult::Verdict::Verified;
    return r;
}

// ------------------------------------------------------------------- scripts

namespace {

using nlohmann::json;

std::vector<int> int_list(const json &j, const std::string &what)
{
    if (!j.is_array())
        throw std::invalid_argument(what + " must be an array");
    std::vector<int> out;
    for (const auto &x : j) {
        if (!x.is_number_integer())
            throw std::invalid_argument(what + " must hold integers");
        out.push_back(x.get<int>());
    }
    return out;
}

Rational rational_field(const json &j, const std::string &what)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (!j.is_string())
        throw std::invalid_argument(what + " must be a rational string such as \"1/3\"");
    return parse_rational(j.get<std::string>());
}

std::size_t corner_slot(const Equation &e, const std::string &name)
{
    const CoeffWord w = parse_word(name);
    for (std::size_t k = 0; k < e.relator.size(); ++k)
        if (e.relator.slots[k].coeff == w)
            return k;
    throw std::invalid_argument("no corner with coefficient '" + name + "'");
}

LabelClaim::Expect expect_from(const std::string &s)
{
    if (s == "admissible")
        return LabelClaim::Expect::Admissible;
    if (s == "possible")
        return LabelClaim::Expect::Possible;
    if (s == "contradiction")
        return LabelClaim::Expect::Contradiction;
    throw std::invalid_argument("unknown expectation '" + s + "'");
}

}  // namespace

CertificateScript parse_certificate_script(std::string_view json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &err) {
        throw std::invalid_argument(std::string("certificate is not valid JSON: ") + err.what());
    }
    try {
        CertificateScript s;
        if (j.value("schema_version", 0) != 1)
            throw std::invalid_argument("unsupported schema_version");
        s.lemma = j.at("lemma").get<std::string>();
        std::string eq_text;
        if (j.contains("nontrivial"))
            eq_text += "nontrivial: " + j.at("nontrivial").get<std::string>() + "\n";
        eq_text += j.at("equation").get<std::string>() + "\n";
        s.equation = parse_equation(eq_text);
        for (const auto &it : j.value("items", json::array()))
            s.items.push_back(it.get<std::string>());
        if (!j.contains("certificate"))
            return s;
        const json &cert = j.at("certificate");
        s.hypothesis = cert.at("hypothesis").get<std::string>();
        s.relations = parse_relations(*s.hypothesis);
        for (const auto &st : cert.at("steps")) {
            DistributionStep d;
            d.id = st.at("id").get<std::string>();
            d.delta.degrees = int_list(st.at("degrees"), "degrees");
            d.bound = rational_field(st.at("bound"), "bound");
            for (const auto &lc : st.value("labels", json::array())) {
                LabelClaim c;
                c.corner = corner_slot(s.equation, lc.at("corner").get<std::string>());
                c.text = lc.at("label").get<std::string>();
                if (!c.text.empty() && c.text.back() == '*') {
                    c.partial = true;
                    c.text.pop_back();
                }
                c.expect = expect_from(lc.value("expect", std::string("possible")));
                d.delta.labels.push_back(c);
            }
            if (st.contains("delta_hat")) {
                const json &hat = st.at("delta_hat");
                d.hat_degrees = int_list(hat.at("degrees"), "delta_hat.degrees");
                if (hat.contains("value"))
                    d.hat_value = rational_field(hat.at("value"), "delta_hat.value");
            }
            for (const auto &a : st.value("assumptions", json::array()))
                d.assumptions.push_back(a.get<std::string>());
            s.steps.push_back(std::move(d));
        }
        return s;
    } catch (const json::exception &err) {
        throw std::invalid_argument(std::string("malformed certificate: ") + err.what());
    } catch (const ParseError &err) {
        throw std::invalid_argument("malformed certificate: " + err.message);
    }
}

std::size_t ScriptResult::count(StepResult::Verdict v) const
{
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [&](const StepResult &s) { return s.verdict == v; }));
}

ScriptResult check_script(const CertificateScript &script)
{
    ScriptResult out;
    out.lemma = script.lemma;
    const AssertResult h = hypothesis_from(script.relations, script.equation.nontrivial);
    if (const auto *c = std::get_if<Contradiction>(&h)) {
        out.contradiction = *c;
        return out;
    }
    const StarGraph g(presentation_of(script.equation));
    for (const DistributionStep &s : script.steps)
        out.steps.push_back(check_distribution_step(g, std::get<Hypothesis>(h), s));
    return out;
}

}  // namespace aspher
