#include "hadamard/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hadamard/analysis.hpp"
#include "hadamard/bounds.hpp"
#include "hadamard/catalog.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/identity.hpp"
#include "hadamard/suite.hpp"

namespace hadamard {

using Json = nlohmann::ordered_json;

namespace {

Json rect_json(const Rect& r) { return Json::array({r.a(), r.b(), r.c(), r.d()}); }
Json point_json(const EvalPoint& p) { return Json::array({p.x, p.y}); }

template <typename T>
Json opt_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

// Per-run accumulation of results, tallies and note keys.
struct RunOutput {
    Json results = Json{{"lemma_evaluations", Json::array()}, {"bound_reports", Json::array()},
                        {"chain_evaluations", Json::array()}, {"gap_surfaces", Json::array()},
                        {"sweeps", Json::array()},            {"comparisons", Json::array()},
                        {"checks", Json::array()}};
    std::size_t passed = 0, failed = 0, known_typo = 0;
    std::set<std::string> notes;
    std::vector<std::string> csv_rows;
    std::string csv_header;
    std::string table;

    void tally(bool ok) { ok ? ++passed : ++failed; }
    std::size_t total() const { return passed + failed + known_typo; }
};

std::string csv_field(double v) { return format_double(v); }
std::string csv_field(bool v) { return v ? "true" : "false"; }
template <typename T>
std::string csv_field(const std::optional<T>& v) {
    return v ? csv_field(*v) : std::string();
}

std::string csv_line(std::initializer_list<std::string> fields) {
    std::string out;
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out += ',';
        out += f;
        first = false;
    }
    return out;
}

// ---- JSON / CSV forms of the result types ----

Json bound_json(const BoundReport& r, RunOutput& run) {
    for (const auto& n : r.notes) run.notes.insert(n);
    const BoundParams& p = r.params;
    Json params{{"rect", rect_json(p.rect)},
                {"point", p.pt ? point_json(*p.pt) : Json(nullptr)},
                {"s", p.s},
                {"q", opt_json(p.q)},
                {"mode", to_string(p.mode)},
                {"t3_constant", p.t3_constant ? Json(to_string(*p.t3_constant)) : Json(nullptr)}};
    return Json{{"theorem", to_string(r.theorem_id)},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"margin", r.margin},
                {"tol", r.tol},
                {"holds", r.holds},
                {"params", params},
                {"hypothesis_certified", opt_json(r.hypothesis_certified)},
                {"notes", r.notes}};
}

const char* kBoundHeader = "theorem,t3_constant,s,q,x,y,lhs,rhs,margin,tol,holds";

std::string bound_csv(const BoundReport& r) {
    const auto& p = r.params;
    return csv_line({std::string(to_string(r.theorem_id)),
                     p.t3_constant ? std::string(to_string(*p.t3_constant)) : std::string(), csv_field(p.s),
                     csv_field(p.q), p.pt ? csv_field(p.pt->x) : std::string(), p.pt ? csv_field(p.pt->y) : std::string(),
                     csv_field(r.lhs), csv_field(r.rhs), csv_field(r.margin), csv_field(r.tol), csv_field(r.holds)});
}

void add_bound(const BoundReport& r, RunOutput& run, const char* list = "bound_reports") {
    run.results[list].push_back(bound_json(r, run));
    run.csv_header = kBoundHeader;
    run.csv_rows.push_back(bound_csv(r));
    run.tally(r.holds);
}

// ---- helpers shared by the commands ----

Surface resolve_surface(const RunConfig& cfg) {
    if (cfg.fn && cfg.catalog) throw ConfigError("give either --fn or --catalog, not both");
    if (cfg.fn) return parse_surface(*cfg.fn);
    if (cfg.catalog) {
        auto e = lookup_catalog(*cfg.catalog);
        if (!e) throw ConfigError("unknown catalog surface '" + *cfg.catalog + "'");
        return e->surface;
    }
    throw ConfigError("--fn or --catalog is required");
}

const Rect& require_rect(const RunConfig& cfg) {
    if (!cfg.rect) throw ConfigError("--rect is required");
    return *cfg.rect;
}

EvalPoint resolve_point(const RunConfig& cfg) {
    const Rect& r = require_rect(cfg);
    const EvalPoint pt = cfg.point.value_or(midpoint(r));
    require_inside(r, pt);
    return pt;
}

Tolerance tolerance_of(const RunConfig& cfg) {
    if (!cfg.tol) return Tolerance{};
    return Tolerance{*cfg.tol, *cfg.tol / 100};
}

BoundOptions bound_options(const RunConfig& cfg) {
    BoundOptions o;
    o.path = cfg.path;
    o.tolerance = tolerance_of(cfg);
    o.certify = cfg.certify;
    o.sampler.seed = cfg.seed;
    return o;
}

BoundFamily family_of(TheoremId id) {
    switch (id) {
        case TheoremId::T1: return BoundFamily::T1;
        case TheoremId::T2: return BoundFamily::T2;
        case TheoremId::T3: return BoundFamily::T3;
        default: throw ConfigError("scan needs --theorem t1, t2 or t3");
    }
}

double default_q(BoundFamily fam) { return fam == BoundFamily::T2 ? 2.0 : 1.0; }

// ---- commands ----

void cmd_lemma(const RunConfig& cfg, RunOutput& run) {
    const Surface f = resolve_surface(cfg);
    const Rect& r = require_rect(cfg);
    const EvalPoint pt = resolve_point(cfg);
    const auto ev = lemma_residual(f, r, pt, cfg.mode, {}, cfg.path);
    const double tol = cfg.tol.value_or(1e-10);
    const bool ok = ev.residual <= tol;
    std::vector<std::string> notes;
    if (cfg.mode == NormalizationMode::Verbatim) notes.emplace_back(kNoteANormalization);
    for (const auto& n : notes) run.notes.insert(n);
    run.results["lemma_evaluations"].push_back(
        Json{{"rect", rect_json(r)},
             {"point", point_json(pt)},
             {"mode", to_string(ev.mode)},
             {"path", to_string(ev.path)},
             {"lhs", ev.lhs},
             {"rhs", ev.rhs},
             {"residual", ev.residual},
             {"a_term", ev.a_term},
             {"quadrant_terms",
              Json{{"ac", ev.quadrant_terms[0]}, {"ad", ev.quadrant_terms[1]}, {"bc", ev.quadrant_terms[2]},
                   {"bd", ev.quadrant_terms[3]}}},
             {"tol", tol},
             {"ok", ok},
             {"notes", notes}});
    run.csv_header = "mode,path,x,y,lhs,rhs,residual,tol,ok";
    run.csv_rows.push_back(csv_line({std::string(to_string(ev.mode)), std::string(to_string(ev.path)),
                                     csv_field(pt.x), csv_field(pt.y), csv_field(ev.lhs), csv_field(ev.rhs),
                                     csv_field(ev.residual), csv_field(tol), csv_field(ok)}));
    run.tally(ok);
}

void cmd_bound(const RunConfig& cfg, RunOutput& run) {
    const Surface f = resolve_surface(cfg);
    const Rect& r = require_rect(cfg);
    const SExponent s(cfg.s);
    const BoundOptions opts = bound_options(cfg);
    const TheoremId id = cfg.theorem;
    const auto modes = t3_modes(cfg.t3_constant);

    switch (id) {
        case TheoremId::T1:
            add_bound(t1_report(f, r, resolve_point(cfg), s, cfg.mode, opts), run);
            return;
        case TheoremId::T2:
            add_bound(t2_report(f, r, resolve_point(cfg), s, make_holder_pair(cfg.q.value_or(2.0)), cfg.mode, opts),
                      run);
            return;
        case TheoremId::T3:
            for (auto m : modes)
                add_bound(t3_report(f, r, resolve_point(cfg), s, PowerMeanQ(cfg.q.value_or(1.0)), m, cfg.mode, opts),
                          run);
            return;
        case TheoremId::Chain: throw ConfigError("use the chain command for the five-term chain");
        default: break;
    }
    for (auto fam : {BoundFamily::T1, BoundFamily::T2, BoundFamily::T3}) {
        const std::optional<double> q =
            fam == BoundFamily::T1 ? std::nullopt : std::optional<double>(cfg.q.value_or(default_q(fam)));
        const auto fam_modes =
            fam == BoundFamily::T3 ? modes : std::vector<T3ConstantMode>{T3ConstantMode::Verbatim};
        for (Corner k : kCorners)
            if (corner_theorem_id(fam, k) == id) {
                for (auto m : fam_modes) add_bound(corner_report(fam, k, f, r, s, q, m, opts), run);
                return;
            }
        if (midpoint_theorem_id(fam) == id) {
            for (auto m : fam_modes) add_bound(midpoint_report(fam, f, r, s, q, m, opts), run);
            return;
        }
    }
    const std::array<std::pair<RemarkId, BoundFamily>, 3> remarks{
        {{RemarkId::C15, BoundFamily::T1}, {RemarkId::METU, BoundFamily::T2}, {RemarkId::FINAL, BoundFamily::T3}}};
    for (const auto& [rid, fam] : remarks)
        if (remark_theorem_id(rid) == id) {
            const std::optional<double> q =
                fam == BoundFamily::T1 ? std::nullopt : std::optional<double>(cfg.q.value_or(default_q(fam)));
            const auto fam_modes =
                fam == BoundFamily::T3 ? modes : std::vector<T3ConstantMode>{T3ConstantMode::Verbatim};
            for (auto m : fam_modes) add_bound(remark_aggregate(rid, f, r, s, q, m, opts), run);
            return;
        }
    throw ConfigError("unsupported theorem '" + std::string(to_string(id)) + "'");
}

void cmd_chain(const RunConfig& cfg, RunOutput& run) {
    const Surface f = resolve_surface(cfg);
    const Rect& r = require_rect(cfg);
    SamplerConfig sampler;
    sampler.seed = cfg.seed;
    const auto ch = chain_evaluate(f, r, SExponent(cfg.s), {}, cfg.tol.value_or(1e-10), cfg.certify, sampler);
    run.results["chain_evaluations"].push_back(Json{{"rect", rect_json(r)},
                                                    {"s", cfg.s},
                                                    {"e", ch.e},
                                                    {"monotone", ch.monotone},
                                                    {"tol", ch.tol},
                                                    {"hypothesis_certified", opt_json(ch.hypothesis_certified)}});
    run.csv_header = "s,e0,e1,e2,e3,e4,monotone";
    run.csv_rows.push_back(csv_line({csv_field(cfg.s), csv_field(ch.e[0]), csv_field(ch.e[1]), csv_field(ch.e[2]),
                                     csv_field(ch.e[3]), csv_field(ch.e[4]), csv_field(ch.monotone)}));
    run.tally(ch.monotone);
}

std::vector<ScanSpec> scan_specs(const RunConfig& cfg) {
    const BoundFamily fam = family_of(cfg.theorem);
    std::vector<ScanSpec> out;
    const auto modes =
        fam == BoundFamily::T3 ? t3_modes(cfg.t3_constant) : std::vector<T3ConstantMode>{T3ConstantMode::Verbatim};
    for (auto m : modes) {
        ScanSpec spec;
        spec.family = fam;
        spec.q = fam == BoundFamily::T1 ? std::nullopt : std::optional<double>(cfg.q.value_or(default_q(fam)));
        spec.t3_constant = m;
        spec.mode = cfg.mode;
        out.push_back(spec);
    }
    return out;
}

void cmd_scan_gap(const RunConfig& cfg, const Surface& f, RunOutput& run) {
    const Rect& r = require_rect(cfg);
    const BoundOptions opts = bound_options(cfg);
    run.csv_header = "theorem,t3_constant,s,q,x,y,lhs,rhs,margin,ok";
    for (const ScanSpec& spec : scan_specs(cfg)) {
        GapSurface g = scan_gap(spec, f, r, SExponent(cfg.s), cfg.grid, opts);
        if (cfg.refine) g.refined = refine_argmin(g, f, r, opts);
        const std::string th(to_string(spec.family));
        const std::string t3 = spec.family == BoundFamily::T3 ? std::string(to_string(spec.t3_constant)) : "";
        bool ok = g.failures == 0;
        Json cells = Json::array();
        for (const auto& c : g.grid) {
            if (c.ok && c.margin < -opts.tolerance.at(c.rhs)) ok = false;
            cells.push_back(Json::array({c.x, c.y, c.lhs, c.rhs, c.margin}));
            run.csv_rows.push_back(csv_line({th, t3, csv_field(cfg.s), csv_field(spec.q), csv_field(c.x),
                                             csv_field(c.y), csv_field(c.lhs), csv_field(c.rhs), csv_field(c.margin),
                                             csv_field(c.ok)}));
        }
        Json refined = nullptr;
        if (g.refined)
            refined = Json{{"start", point_json(g.refined->start)},
                           {"point", point_json(g.refined->point)},
                           {"margin", g.refined->margin},
                           {"iterations", g.refined->iterations}};
        std::vector<std::string> notes;
        if (spec.mode == NormalizationMode::Verbatim) notes.emplace_back(kNoteANormalization);
        if (spec.family == BoundFamily::T3) notes.emplace_back(kNoteT3Constant);
        for (const auto& n : notes) run.notes.insert(n);
        run.results["gap_surfaces"].push_back(Json{{"theorem", th},
                                                   {"t3_constant", t3.empty() ? Json(nullptr) : Json(t3)},
                                                   {"mode", to_string(spec.mode)},
                                                   {"s", cfg.s},
                                                   {"q", opt_json(spec.q)},
                                                   {"grid_n", g.grid_n},
                                                   {"min_margin", g.min_margin},
                                                   {"argmin", point_json(g.argmin)},
                                                   {"failures", g.failures},
                                                   {"ok", ok},
                                                   {"cell_fields", {"x", "y", "lhs", "rhs", "margin"}},
                                                   {"cells", cells},
                                                   {"refined", refined},
                                                   {"notes", notes}});
        run.tally(ok);
    }
}

void cmd_scan(const RunConfig& cfg, RunOutput& run) {
    const Surface f = resolve_surface(cfg);
    const Rect& r = require_rect(cfg);
    const BoundOptions opts = bound_options(cfg);
    switch (cfg.kind) {
        case ScanKind::Gap: cmd_scan_gap(cfg, f, run); return;
        case ScanKind::Sweep: {
            const EvalPoint pt = resolve_point(cfg);
            for (const ScanSpec& spec : scan_specs(cfg)) {
                const SweepTable t = sweep_s(spec, f, r, pt, cfg.s_list, opts);
                Json rows = Json::array();
                bool ok = true;
                for (const auto& row : t.rows) {
                    rows.push_back(bound_json(row, run));
                    run.csv_rows.push_back(bound_csv(row));
                    ok = ok && row.holds;
                }
                run.csv_header = kBoundHeader;
                run.results["sweeps"].push_back(Json{{"theorem", to_string(spec.family)},
                                                     {"t3_constant", spec.family == BoundFamily::T3
                                                                         ? Json(to_string(spec.t3_constant))
                                                                         : Json(nullptr)},
                                                     {"point", point_json(pt)},
                                                     {"rhs_trend", t.rhs_trend},
                                                     {"rows", rows}});
                run.tally(ok);
            }
            return;
        }
        case ScanKind::Compare: {
            const EvalPoint pt = resolve_point(cfg);
            for (const auto& row : compare_families(f, r, pt, SExponent(cfg.s), cfg.q.value_or(2.0), cfg.mode, opts))
                add_bound(row, run, "comparisons");
            return;
        }
    }
}

void cmd_suite(const RunConfig& cfg, RunOutput& run) {
    SuiteOptions so;
    so.tol = cfg.tol;
    so.include_verbatim_identity = cfg.include_verbatim_identity;
    so.seed = cfg.seed;
    const auto checks = run_suite(so);
    std::ostringstream table;
    table << std::left << std::setw(10) << "criterion" << std::setw(11) << "status" << std::setw(44) << "check"
          << std::setw(14) << "worst" << std::setw(12) << "tolerance" << "count\n";
    run.csv_header = "criterion,name,status,worst,tolerance,count,detail";
    for (const auto& c : checks) {
        switch (c.status) {
            case CheckStatus::Pass: ++run.passed; break;
            case CheckStatus::Fail: ++run.failed; break;
            case CheckStatus::KnownTypo:
                ++run.known_typo;
                run.notes.insert(std::string(kNoteANormalization));
                break;
        }
        run.results["checks"].push_back(Json{{"criterion", c.criterion},
                                             {"name", c.name},
                                             {"status", to_string(c.status)},
                                             {"worst", c.worst},
                                             {"tolerance", c.tolerance},
                                             {"count", c.count},
                                             {"detail", c.detail}});
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        run.csv_rows.push_back(csv_line({std::to_string(c.criterion), c.name, std::string(to_string(c.status)),
                                         csv_field(c.worst), csv_field(c.tolerance), std::to_string(c.count),
                                         detail}));
        std::ostringstream worst, tol;
        worst << std::setprecision(3) << c.worst;
        tol << std::setprecision(3) << c.tolerance;
        table << std::left << std::setw(10) << c.criterion << std::setw(11) << to_string(c.status) << std::setw(44)
              << c.name << std::setw(14) << worst.str() << std::setw(12) << tol.str() << c.count << "\n";
    }
    table << "passed " << run.passed << ", failed " << run.failed << ", known typo " << run.known_typo << "\n";
    run.table = table.str();
}

Json run_report(const RunConfig& cfg, const RunOutput& run) {
    Json config = Json::object();
    for (const auto& [k, v] : to_key_values(cfg)) config[k] = v;
    Json notes = Json::object();
    for (const auto& n : run.notes) notes[n] = note_text(n);
    return Json{{"tool", kToolName},
                {"version", kToolVersion},
                {"timestamp", run_timestamp()},
                {"command", to_string(cfg.command)},
                {"config", config},
                {"results", run.results},
                {"summary",
                 Json{{"total", run.total()},
                      {"passed", run.passed},
                      {"failed", run.failed},
                      {"known_typo", run.known_typo}}},
                {"notes", notes}};
}

std::string csv_text(const RunOutput& run) {
    std::string out = run.csv_header + "\n";
    for (const auto& row : run.csv_rows) out += row + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << body;
    if (!f) throw ConfigError("cannot write output file '" + path + "'");
}

}  // namespace

std::string_view note_text(std::string_view key) noexcept {
    if (key == kNoteANormalization)
        return "Verbatim mode divides the corner-weighted term A by (b-a)(d-c). The other terms of the identity "
               "are not divided, so the identity then fails for constant f unless the area is 1. Corrected mode "
               "leaves A undivided.";
    if (key == kNoteT3Constant)
        return "The power-mean step gives the prefactor 2^(2/q-2). The printed prefactor 2^(2-2/q) is never "
               "smaller, so verbatim values are valid but looser bounds; they coincide at q = 1.";
    return "";
}

std::string run_timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunConfig parse_arguments(const std::vector<std::string>& args) {
    CLI::App app{"Checks the boundary identity and bound families for co-ordinated s-convex functions on "
                 "rectangles.",
                 std::string(kToolName)};
    app.set_version_flag("--version", std::string(kToolVersion));
    std::string command;
    app.add_option("command", command, "lemma | bound | chain | scan | suite");
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file; flags override it");

    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    for (const auto& key : config_keys()) {
        if (key == "command") continue;
        CLI::Option* opt = is_boolean_key(key) ? app.add_flag("--" + key, flags[key]) : app.add_option("--" + key, values[key]);
        options.emplace_back(key, opt);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    KeyValues kv;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        kv = parse_config_text(buf.str());
    }
    if (!command.empty()) kv.emplace_back("command", command);
    for (const auto& [key, opt] : options) {
        if (opt->count() == 0) continue;
        kv.emplace_back(key, is_boolean_key(key) ? (flags[key] ? "true" : "false") : values[key]);
    }
    const bool has_command =
        std::any_of(kv.begin(), kv.end(), [](const auto& p) { return p.first == "command"; });
    if (!has_command) throw ConfigError("a command is required: lemma, bound, chain, scan or suite");
    return from_key_values(kv);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_arguments(args);
    } catch (const CLI::CallForHelp&) {
        out << "usage: " << kToolName
            << " <lemma|bound|chain|scan|suite> [--fn EXPR | --catalog NAME] --rect a,b,c,d [--point x,y]\n"
               "       [--s S] [--q Q] [--theorem ID] [--mode corrected|verbatim]\n"
               "       [--t3-constant verbatim|sharpened|both] [--grid N] [--seed U64] [--out PATH]\n"
               "       [--format json|csv] [--tol X] [--certify] [--include-verbatim-identity]\n"
               "       [--kind gap|sweep|compare] [--s-list S1,S2,...] [--refine]\n"
               "       [--path auto|quadrature|exact] [--config FILE]\n";
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    RunOutput run;
    try {
        switch (cfg.command) {
            case Command::Lemma: cmd_lemma(cfg, run); break;
            case Command::Bound: cmd_bound(cfg, run); break;
            case Command::Chain: cmd_chain(cfg, run); break;
            case Command::Scan: cmd_scan(cfg, run); break;
            case Command::Suite: cmd_suite(cfg, run); break;
        }
        const std::string json = run_report(cfg, run).dump(2) + "\n";
        const std::string primary = cfg.format == OutputFormat::Json ? json : csv_text(run);
        if (cfg.command == Command::Suite) {
            out << run.table;
            if (cfg.out) write_file(*cfg.out, primary);
        } else if (cfg.out) {
            write_file(*cfg.out, primary);
            if (cfg.format == OutputFormat::Csv) out << json;
        } else {
            out << primary;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        // ConfigError, DegenerateRect, BadExponent, DomainError.
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "evaluation failed: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return run.failed == 0 ? kExitPass : kExitCheckFailed;
}

}  // namespace hadamard
