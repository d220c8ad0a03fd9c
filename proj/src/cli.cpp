#include "aspher/cli.hpp"

#include "aspher/casebook.hpp"
#include "aspher/curvature.hpp"
#include "aspher/stargraph.hpp"
#include "aspher/weight.hpp"
#include "aspher/words.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace aspher {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kFailed = 1, kInput = 2, kInconclusive = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string format = "text";
    int max_walk_len = 2;
    std::size_t cap = kDefaultWalkCap;
    std::string domain;

    bool json() const { return format == "json"; }
};

Json header(const std::string &command)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

void emit(std::ostream &out, const Json &j) { out << j.dump(2) << "\n"; }

Json edges_json(const StarGraph &g)
{
    Json a = Json::array();
    for (const Edge &e : g.edges())
        a.push_back({{"id", e.id},
                     {"from", g.vertex_name(e.v1)},
                     {"to", g.vertex_name(e.v2)},
                     {"label", e.label.empty() ? "1" : e.label.render()},
                     {"relator", e.relator},
                     {"slot", e.slot}});
    return a;
}

Equation load_equation(const std::string &path) { return parse_equation(read_text(path)); }

// Hypothesis from a literal, extended by the equation's fixed identities.
Hypothesis load_hypothesis(const Equation &e, const std::string &literal)
{
    const AssertResult h0 = hypothesis_from(parse_relations(literal), e.nontrivial);
    if (const auto *c = std::get_if<Contradiction>(&h0))
        throw InputError("hypothesis is contradictory: " + c->describe());
    const AssertResult h1 = with_fixed_identity(e, std::get<Hypothesis>(h0));
    if (const auto *c = std::get_if<Contradiction>(&h1))
        throw InputError("hypothesis contradicts the fixed identities: " + c->describe());
    return std::get<Hypothesis>(h1);
}

struct Prepared {
    Relator specialized;
    std::optional<std::size_t> slot;
    Presentation presentation;
};

Prepared prepare(const Equation &e, const Hypothesis &h, const std::string &split)
{
    Prepared p;
    p.specialized = specialize(e, h);
    if (split == "auto") {
        p.slot = auto_split_slot(p.specialized);
    } else if (split != "none") {
        std::size_t k = 0;
        try {
            k = std::stoul(split);
        } catch (const std::exception &) {
            throw InputError("--split expects a slot number, auto or none");
        }
        if (k >= p.specialized.size())
            throw InputError("split slot " + split + " out of range");
        p.slot = k;
    }
    p.presentation = p.slot ? split_transform(p.specialized, *p.slot) : Presentation{"t", {p.specialized}};
    return p;
}

// ----------------------------------------------------------------- commands

int cmd_stargraph(const Options &o, const std::string &file, const std::string &hyp, std::ostream &out)
{
    const Equation e = load_equation(file);
    const Presentation p = hyp.empty() ? presentation_of(e) : Presentation{"t", {specialize(e, load_hypothesis(e, hyp))}};
    const StarGraph g(p);
    const auto labels = degree2_labels(g, e.nontrivial);
    const auto walks = reduced_closed_walks(g, o.max_walk_len, o.cap);
    if (o.json()) {
        Json j = header("stargraph");
        j["equation"] = render_relator(p.relators.front());
        Json vs = Json::array();
        for (int v = 0; v < g.vertex_count(); ++v)
            vs.push_back(g.vertex_name(v));
        j["vertices"] = vs;
        j["edges"] = edges_json(g);
        Json s = Json::array();
        for (const auto &w : labels)
            s.push_back(w.render());
        j["S"] = s;
        j["max_walk_len"] = o.max_walk_len;
        Json ws = Json::array();
        for (const Walk &w : walks)
            ws.push_back({{"steps", render_steps(g, w.steps)}, {"label", w.label.render()}});
        j["reduced_closed_walks"] = ws;
        emit(out, j);
        return kOk;
    }
    out << "relator: " << render_relator(p.relators.front()) << "\n";
    out << "vertices:";
    for (int v = 0; v < g.vertex_count(); ++v)
        out << " " << g.vertex_name(v);
    out << "\n" << g.dump();
    out << "S (" << labels.size() << "):";
    for (const auto &w : labels)
        out << " " << w.render();
    out << "\nreduced closed walks of length <= " << o.max_walk_len << ": " << walks.size() << "\n";
    for (const Walk &w : walks)
        out << "  " << render_steps(g, w.steps) << "  " << (w.label.empty() ? "1" : w.label.render()) << "\n";
    return kOk;
}

Json report_json(const StarGraph &g, const WeightTestReport &r)
{
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    if (r.failed_condition)
        j["failed_condition"] = r.failed_condition;
    j["reason"] = r.reason;
    Json sums = Json::array();
    for (const Rational &s : r.relator_sums)
        sums.push_back(render_rational(s));
    j["relator_sums"] = sums;
    if (r.witness)
        j["witness"] = {{"steps", render_steps(g, r.witness->steps)},
                        {"label", r.witness->label.render()},
                        {"weight", render_rational(r.witness->weight)}};
    j["examined"] = r.examined.size();
    return j;
}

void report_text(std::ostream &out, const StarGraph &g, const WeightTestReport &r)
{
    out << "verdict: " << verdict_name(r.verdict);
    if (r.failed_condition)
        out << " (condition " << r.failed_condition << ")";
    out << "\n";
    if (!r.reason.empty())
        out << "reason: " << r.reason << "\n";
    out << "relator sums:";
    for (const Rational &s : r.relator_sums)
        out << " " << render_rational(s);
    out << "\n";
    if (r.witness)
        out << "witness: " << render_steps(g, r.witness->steps) << " label " << r.witness->label.render()
            << " weight " << render_rational(r.witness->weight) << "\n";
    out << "cycles examined: " << r.examined.size() << "\n";
}

int exit_for(WeightTestReport::Verdict v)
{
    switch (v) {
    case WeightTestReport::Verdict::Pass:
        return kOk;
    case WeightTestReport::Verdict::Fail:
        return kFailed;
    case WeightTestReport::Verdict::Inconclusive:
        return kInconclusive;
    }
    return kFailed;
}

int cmd_weight(const Options &o, const std::string &file, const std::string &hyp, const std::string &theta_file,
               bool do_search, const std::string &split, std::ostream &out)
{
    if (theta_file.empty() == !do_search)
        throw InputError("weight needs exactly one of --verify and --search");
    const Equation e = load_equation(file);
    const Hypothesis h = load_hypothesis(e, hyp);
    const Prepared p = prepare(e, h, split);
    const StarGraph g(p.presentation);
    WeightOptions wopt;
    wopt.cap = o.cap;

    Json j = header("weight");
    j["hypothesis"] = hyp;
    j["specialized"] = render_relator(p.specialized);
    if (p.slot)
        j["split_slot"] = *p.slot;
    Json rel = Json::array();
    for (const Relator &r : p.presentation.relators)
        rel.push_back(render_relator(r));
    j["relators"] = rel;
    j["edges"] = edges_json(g);

    if (!o.json()) {
        out << "specialized: " << render_relator(p.specialized) << "\n";
        if (p.slot)
            out << "split at slot " << *p.slot << "\n";
        for (const Relator &r : p.presentation.relators)
            out << "relator: " << render_relator(r) << "\n";
        out << g.dump();
    }

    if (!theta_file.empty()) {
        WeightFunction theta;
        try {
            theta = parse_weight_function(read_text(theta_file), g.edges().size());
        } catch (const ParseError &e) {
            throw InputError(theta_file + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " +
                             e.message);
        }
        const WeightTestReport r = verify(g, theta, h, wopt);
        if (o.json()) {
            j["theta"] = render_weight_function(theta);
            j["report"] = report_json(g, r);
            emit(out, j);
        } else {
            report_text(out, g, r);
        }
        return exit_for(r.verdict);
    }

    const std::vector<Rational> domain = o.domain.empty() ? default_domain() : parse_domain(o.domain);
    const SearchResult s = search(g, h, domain, o.cap, wopt);
    if (o.json()) {
        Json d = Json::array();
        for (const Rational &q : domain)
            d.push_back(render_rational(q));
        j["domain"] = d;
        j["candidates"] = s.candidates;
        j["inconclusive"] = s.inconclusive;
        if (s.theta) {
            j["found"] = true;
            j["theta"] = render_weight_function(*s.theta);
            j["report"] = report_json(g, *s.report);
        } else {
            j["found"] = false;
            j["reason"] = s.reason;
        }
        emit(out, j);
    } else {
        out << "candidates: " << s.candidates << " (inconclusive " << s.inconclusive << ")\n";
        if (s.theta) {
            out << "found:\n" << render_weight_function(*s.theta);
            report_text(out, g, *s.report);
        } else {
            out << "not found: " << s.reason << "\n";
        }
    }
    return s.theta ? kOk : kFailed;
}

// "3^7" expands to seven threes.
std::vector<int> parse_degrees(const std::vector<std::string> &args)
{
    std::vector<int> out;
    for (const std::string &raw : args) {
        std::stringstream ss(raw);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty())
                continue;
            const auto caret = tok.find('^');
            try {
                const int d = std::stoi(tok.substr(0, caret));
                const int times = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
                if (times < 0)
                    throw InputError("negative repeat in " + tok);
                out.insert(out.end(), static_cast<std::size_t>(times), d);
            } catch (const std::logic_error &) {
                throw InputError("bad degree '" + tok + "'");
            }
        }
    }
    return out;
}

int cmd_curvature(const Options &o, const std::vector<std::string> &args, int bound_n, int fixed2, int min_rest,
                  std::ostream &out)
{
    Json j = header("curvature");
    CurvatureValue v;
    if (bound_n > 0) {
        const std::vector<int> extra = parse_degrees(args);
        if (fixed2 < 0 || min_rest < 2 || fixed2 + static_cast<int>(extra.size()) > bound_n)
            throw InputError("inconsistent bound parameters");
        v = curvature_bound(bound_n, fixed2, min_rest, extra);
        j["n"] = bound_n;
        j["fixed2"] = fixed2;
        j["min_rest"] = min_rest;
        Json ex = Json::array();
        for (int d : extra)
            ex.push_back(d);
        j["extra"] = ex;
        j["bound"] = v.render();
    } else {
        const std::vector<int> d = parse_degrees(args);
        if (d.empty())
            throw InputError("curvature needs degrees or --bound");
        try {
            v = curvature(d);
        } catch (const std::invalid_argument &err) {
            throw InputError(err.what());
        }
        Json ds = Json::array();
        for (int x : d)
            ds.push_back(x);
        j["degrees"] = ds;
        j["curvature"] = v.render();
    }
    if (o.json())
        emit(out, j);
    else
        out << v.render() << "\n";
    return kOk;
}

Json step_json(const StepResult &s)
{
    Json j;
    j["id"] = s.id;
    j["verdict"] = verdict_name(s.verdict);
    j["computed_bound"] = s.computed_bound.render();
    if (s.computed_hat)
        j["computed_hat"] = s.computed_hat->render();
    Json cs = Json::array();
    for (const CornerVerdict &c : s.corners)
        cs.push_back({{"corner", c.corner},
                      {"label", c.label},
                      {"status", status_name(c.status)},
                      {"reduced", c.reduced},
                      {"message", c.message}});
    j["corners"] = cs;
    j["failures"] = s.failures;
    j["notes"] = s.notes;
    j["assumptions"] = s.assumptions;
    return j;
}

int cmd_check_script(const Options &o, const std::string &file, std::ostream &out, std::ostream &err)
{
    CertificateScript script;
    try {
        script = parse_certificate_script(read_text(file));
    } catch (const std::invalid_argument &e) {
        throw InputError(file + ": " + e.what());
    }
    const ScriptResult r = check_script(script);
    const std::size_t refuted = r.count(StepResult::Verdict::Refuted);
    if (!r.has_certificate())
        err << "warning: " << file << " has no distribution steps\n";
    if (o.json()) {
        Json j = header("check-script");
        j["lemma"] = r.lemma;
        if (r.contradiction)
            j["contradiction"] = r.contradiction->describe();
        Json steps = Json::array();
        for (const StepResult &s : r.steps)
            steps.push_back(step_json(s));
        j["steps"] = steps;
        j["refuted"] = refuted;
        emit(out, j);
    } else {
        out << "lemma " << r.lemma << "\n";
        if (r.contradiction)
            out << "hypothesis contradictory: " << r.contradiction->describe() << "\n";
        for (const StepResult &s : r.steps) {
            out << "step " << s.id << ": " << verdict_name(s.verdict) << "  c(delta) <= "
                << s.computed_bound.render();
            if (s.computed_hat)
                out << "  c(hat) = " << s.computed_hat->render();
            out << "\n";
            for (const auto &f : s.failures)
                out << "  failure: " << f << "\n";
            for (const auto &n : s.notes)
                out << "  note: " << n << "\n";
            for (const auto &a : s.assumptions)
                out << "  assumes: " << a << "\n";
        }
        out << "refuted steps: " << refuted << "\n";
    }
    return refuted ? kFailed : kOk;
}

int cmd_cases(const Options &o, const std::string &file, std::ostream &out)
{
    const CaseSpace space(load_equation(file));
    const auto cases = enumerate_cases(space);
    if (o.json()) {
        Json j = header("cases");
        Json s = Json::array();
        for (const auto &w : space.labels)
            s.push_back(w.render());
        j["S"] = s;
        j["symmetries"] = space.group.size();
        Json cs = Json::array();
        for (const CanonicalCase &c : cases)
            cs.push_back({{"n", c.n}, {"labels", c.key}, {"relations", render_relations(space.relations_of(c.mask))}});
        j["cases"] = cs;
        emit(out, j);
        return kOk;
    }
    out << "S (" << space.labels.size() << "), " << space.group.size() << " symmetries, " << cases.size()
        << " cases\n";
    for (std::size_t i = 0; i < cases.size(); ++i)
        out << i << " N=" << cases[i].n << " {" << cases[i].key << "}\n";
    return kOk;
}

AuditInputs load_audit_inputs(const fs::path &dir)
{
    AuditInputs in;
    const fs::path lem = dir / "curvature.lemmas";
    for (const char *f : {"equation.eq", "lemma31.cases", "exceptions.cases"})
        if (!fs::exists(dir / f))
            throw InputError("missing " + (dir / f).string());
    in.weight_items = parse_case_items(read_text((dir / "lemma31.cases").string()));
    in.exceptions = parse_case_items(read_text((dir / "exceptions.cases").string()));
    if (fs::is_directory(lem)) {
        std::vector<fs::path> files;
        for (const auto &f : fs::directory_iterator(lem))
            if (f.path().extension() == ".json")
                files.push_back(f.path());
        // lemma_3_2 before lemma_3_10.
        auto numbers = [](const fs::path &p) {
            std::vector<long> v;
            std::string digits;
            for (char c : p.stem().string() + "_") {
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    digits += c;
                } else if (!digits.empty()) {
                    v.push_back(std::stol(digits));
                    digits.clear();
                }
            }
            return std::make_pair(v, p.string());
        };
        std::sort(files.begin(), files.end(), [&](const fs::path &a, const fs::path &b) { return numbers(a) < numbers(b); });
        for (const auto &f : files) {
            try {
                in.curvature.push_back(load_curvature_lemma(read_text(f.string())));
            } catch (const std::invalid_argument &e) {
                throw InputError(f.string() + ": " + e.what());
            }
        }
    }
    return in;
}

int cmd_audit(const Options &o, const std::string &dir, bool weight_search, std::ostream &out)
{
    const fs::path root(dir);
    const AuditInputs in = load_audit_inputs(root);
    const CaseSpace space(load_equation((root / "equation.eq").string()));
    AuditOptions opt;
    opt.weight_search = weight_search;
    opt.cap = o.cap;
    if (!o.domain.empty())
        opt.domain = parse_domain(o.domain);
    const AuditReport r = audit(space, in, opt);
    if (!o.json()) {
        out << render_audit_text(r);
        return kOk;
    }
    Json j = header("audit");
    Json cs = Json::array();
    for (const AuditedCase &a : r.cases) {
        Json c;
        c["n"] = a.c.n;
        c["labels"] = a.c.key;
        c["corners"] = a.corners;
        c["exact"] = {{"kind", coverage_name(a.exact.kind)}, {"sources", a.exact.sources}};
        c["monotone"] = {{"kind", coverage_name(a.monotone.kind)}, {"sources", a.monotone.sources}};
        if (a.weight_search)
            c["weight_search"] = *a.weight_search;
        cs.push_back(c);
    }
    j["cases"] = cs;
    j["exact_counts"] = r.exact_counts;
    j["monotone_counts"] = r.monotone_counts;
    j["exception_entries"] = r.exception_entries;
    j["exception_variants"] = r.exception_variants;
    j["certificates"] = r.certificates;
    j["discrepancies"] = r.discrepancies;
    emit(out, j);
    return kOk;
}

std::size_t env_cap()
{
    const char *v = std::getenv("ASPHER_CAP");
    if (!v || !*v)
        return kDefaultWalkCap;
    try {
        const long long n = std::stoll(v);
        if (n <= 0)
            throw InputError("ASPHER_CAP must be positive");
        return static_cast<std::size_t>(n);
    } catch (const std::logic_error &) {
        throw InputError("ASPHER_CAP is not a number");
    }
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Star graphs, weight tests and curvature certificates for group equations", "aspher"};
    app.require_subcommand(1);
    Options o;
    std::size_t cap = 0;
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--max-walk-len", o.max_walk_len, "longest closed walk to list")->check(CLI::PositiveNumber);
    app.add_option("--cap", cap, "enumeration cap (default ASPHER_CAP or 1000000)")->check(CLI::PositiveNumber);
    app.add_option("--domain", o.domain, "weight values, e.g. 0,1/2,1");

    std::string file, hyp, theta, split = "auto", dir;
    bool do_search = false, no_weight_search = false;
    std::vector<std::string> degrees;
    int bound_n = 0, fixed2 = 0, min_rest = 3;

    auto *sg = app.add_subcommand("stargraph", "dump the star graph and its degree-2 labels");
    sg->add_option("file", file, "equation file")->required();
    sg->add_option("--hyp", hyp, "specialize under a hypothesis first");

    auto *wt = app.add_subcommand("weight", "verify or search a weight function");
    wt->add_option("file", file, "equation file")->required();
    wt->add_option("--hyp", hyp, "coincidence hypothesis, e.g. a=f^-1");
    wt->add_option("--verify", theta, "theta file");
    wt->add_flag("--search", do_search, "search the domain for a passing theta");
    wt->add_option("--split", split, "slot index, auto or none");

    auto *cv = app.add_subcommand("curvature", "curvature of a region, in units of pi");
    cv->add_option("degrees", degrees, "corner degrees; 3^7 repeats");
    cv->add_option("--bound", bound_n, "number of corners for a bound");
    cv->add_option("--fixed2", fixed2, "corners of degree 2 in the bound");
    cv->add_option("--min-rest", min_rest, "lower bound on the other corners");

    auto *cs = app.add_subcommand("check-script", "check a curvature certificate");
    cs->add_option("file", file, "certificate JSON")->required();

    auto *ca = app.add_subcommand("cases", "enumerate cases up to symmetry");
    ca->add_option("file", file, "equation file")->required();

    auto *au = app.add_subcommand("audit", "classify every case against the lemma data");
    au->add_option("dir", dir, "data directory")->required();
    au->add_flag("--no-weight-search", no_weight_search, "skip the weight search per case");

    // Flags are global; let them follow the subcommand too.
    for (auto *sub : {sg, wt, cv, cs, ca, au})
        sub->fallthrough();

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i)
            args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kOk : kInput;
    }

    try {
        o.cap = cap ? cap : env_cap();
        if (*sg)
            return cmd_stargraph(o, file, hyp, out);
        if (*wt)
            return cmd_weight(o, file, hyp, theta, do_search, split, out);
        if (*cv)
            return cmd_curvature(o, degrees, bound_n, fixed2, min_rest, out);
        if (*cs)
            return cmd_check_script(o, file, out, err);
        if (*ca)
            return cmd_cases(o, file, out);
        if (*au)
            return cmd_audit(o, dir, !no_weight_search, out);
    } catch (const ParseError &e) {
        err << "error: " << file << ":" << e.line << ":" << e.column << ": " << e.message << "\n";
        return kInput;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const WalkCapExceeded &e) {
        err << "cap exceeded: " << e.what() << "\n";
        return kInconclusive;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}

}  // namespace aspher
