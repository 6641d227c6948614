#include "hadamard/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hadamard {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text.empty()) return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError("--" + std::string(key) + " expects true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_fixed(std::string_view key, std::string_view text, std::size_t n) {
    std::vector<double> v;
    try {
        v = parse_double_list(text);
    } catch (const ConfigError&) {
        throw ConfigError("--" + std::string(key) + ": cannot parse '" + std::string(text) + "'");
    }
    if (v.size() != n)
        throw ConfigError("--" + std::string(key) + " expects " + std::to_string(n) + " comma-separated numbers");
    return v;
}

int parse_int(std::string_view key, std::string_view text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError("--" + std::string(key) + " expects an integer, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    int base = 10;
    if (text.starts_with("0x") || text.starts_with("0X")) {
        text.remove_prefix(2);
        base = 16;
    }
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v, base);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError("--" + std::string(key) + " expects an unsigned 64-bit integer");
    return v;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

template <typename E, std::size_t N>
E parse_enum(std::string_view key, std::string_view text, const std::array<E, N>& values) {
    for (E e : values)
        if (to_string(e) == text) return e;
    std::string allowed;
    for (E e : values) allowed += (allowed.empty() ? "" : "|") + std::string(to_string(e));
    throw ConfigError("--" + std::string(key) + " expects " + allowed + ", got '" + std::string(text) + "'");
}

constexpr std::array kCommands{Command::Lemma, Command::Bound, Command::Chain, Command::Scan, Command::Suite};
constexpr std::array kFormats{OutputFormat::Json, OutputFormat::Csv};
constexpr std::array kKinds{ScanKind::Gap, ScanKind::Sweep, ScanKind::Compare};
constexpr std::array kT3{T3Selection::Verbatim, T3Selection::Sharpened, T3Selection::Both};
constexpr std::array kModes{NormalizationMode::Corrected, NormalizationMode::Verbatim};
constexpr std::array kPaths{IntegrationPath::Auto, IntegrationPath::Quadrature, IntegrationPath::Exact};

}  // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Lemma: return "lemma";
        case Command::Bound: return "bound";
        case Command::Chain: return "chain";
        case Command::Scan: return "scan";
        case Command::Suite: return "suite";
    }
    return "lemma";
}

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Json ? "json" : "csv"; }

std::string_view to_string(ScanKind k) noexcept {
    switch (k) {
        case ScanKind::Gap: return "gap";
        case ScanKind::Sweep: return "sweep";
        case ScanKind::Compare: return "compare";
    }
    return "gap";
}

std::string_view to_string(T3Selection t) noexcept {
    switch (t) {
        case T3Selection::Verbatim: return "verbatim";
        case T3Selection::Sharpened: return "sharpened";
        case T3Selection::Both: return "both";
    }
    return "both";
}

Command parse_command(std::string_view text) { return parse_enum("command", text, kCommands); }

std::vector<T3ConstantMode> t3_modes(T3Selection t) {
    switch (t) {
        case T3Selection::Verbatim: return {T3ConstantMode::Verbatim};
        case T3Selection::Sharpened: return {T3ConstantMode::Sharpened};
        case T3Selection::Both: return {T3ConstantMode::Verbatim, T3ConstantMode::Sharpened};
    }
    return {};
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "command", "fn",     "catalog", "rect",   "point",   "s",       "q",
        "theorem", "mode",   "t3-constant", "grid", "seed",  "out",     "format",
        "tol",     "certify", "include-verbatim-identity", "refine", "kind", "s-list", "path"};
    return keys;
}

bool is_boolean_key(std::string_view key) {
    return key == "certify" || key == "include-verbatim-identity" || key == "refine";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc() || ptr != end || t.empty() || !std::isfinite(v))
        throw ConfigError("not a finite number: '" + std::string(text) + "'");
    return v;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
    return out;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view raw) {
    const std::string value = trim(raw);
    if (key == "command") {
        cfg.command = parse_command(value);
    } else if (key == "fn") {
        cfg.fn = value;
    } else if (key == "catalog") {
        cfg.catalog = value;
    } else if (key == "rect") {
        const auto v = parse_fixed(key, value, 4);
        cfg.rect = make_rect(v[0], v[1], v[2], v[3]);
    } else if (key == "point") {
        const auto v = parse_fixed(key, value, 2);
        cfg.point = EvalPoint{v[0], v[1]};
    } else if (key == "s") {
        cfg.s = SExponent(parse_fixed(key, value, 1)[0]).value();
    } else if (key == "q") {
        cfg.q = parse_fixed(key, value, 1)[0];
    } else if (key == "theorem") {
        try {
            cfg.theorem = parse_theorem_id(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "mode") {
        cfg.mode = parse_enum(key, value, kModes);
    } else if (key == "t3-constant") {
        cfg.t3_constant = parse_enum(key, value, kT3);
    } else if (key == "grid") {
        cfg.grid = parse_int(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_u64(key, value);
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "format") {
        cfg.format = parse_enum(key, value, kFormats);
    } else if (key == "tol") {
        const double t = parse_fixed(key, value, 1)[0];
        if (t < 0.0) throw ConfigError("--tol must be nonnegative");
        cfg.tol = t;
    } else if (key == "certify") {
        cfg.certify = parse_bool(key, value);
    } else if (key == "include-verbatim-identity") {
        cfg.include_verbatim_identity = parse_bool(key, value);
    } else if (key == "refine") {
        cfg.refine = parse_bool(key, value);
    } else if (key == "kind") {
        cfg.kind = parse_enum(key, value, kKinds);
    } else if (key == "s-list") {
        try {
            cfg.s_list = parse_double_list(value);
        } catch (const ConfigError&) {
            throw ConfigError("--s-list: cannot parse '" + value + "'");
        }
        for (double s : cfg.s_list) (void)SExponent(s);
    } else if (key == "path") {
        cfg.path = parse_enum(key, value, kPaths);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

RunConfig from_key_values(const KeyValues& kv) {
    RunConfig cfg;
    for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
    return cfg;
}

KeyValues to_key_values(const RunConfig& cfg) {
    KeyValues kv;
    kv.emplace_back("command", to_string(cfg.command));
    if (cfg.fn) kv.emplace_back("fn", *cfg.fn);
    if (cfg.catalog) kv.emplace_back("catalog", *cfg.catalog);
    if (cfg.rect) kv.emplace_back("rect", join({cfg.rect->a(), cfg.rect->b(), cfg.rect->c(), cfg.rect->d()}));
    if (cfg.point) kv.emplace_back("point", join({cfg.point->x, cfg.point->y}));
    kv.emplace_back("s", format_double(cfg.s));
    if (cfg.q) kv.emplace_back("q", format_double(*cfg.q));
    kv.emplace_back("theorem", to_string(cfg.theorem));
    kv.emplace_back("mode", to_string(cfg.mode));
    kv.emplace_back("t3-constant", to_string(cfg.t3_constant));
    kv.emplace_back("grid", std::to_string(cfg.grid));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    if (cfg.out) kv.emplace_back("out", *cfg.out);
    kv.emplace_back("format", to_string(cfg.format));
    if (cfg.tol) kv.emplace_back("tol", format_double(*cfg.tol));
    kv.emplace_back("certify", cfg.certify ? "true" : "false");
    kv.emplace_back("include-verbatim-identity", cfg.include_verbatim_identity ? "true" : "false");
    kv.emplace_back("refine", cfg.refine ? "true" : "false");
    kv.emplace_back("kind", to_string(cfg.kind));
    kv.emplace_back("s-list", join(cfg.s_list));
    kv.emplace_back("path", to_string(cfg.path));
    return kv;
}

std::string format_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : to_key_values(cfg)) out += k + " = " + v + "\n";
    return out;
}

KeyValues parse_config_text(std::string_view text) {
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.starts_with("--")) key.erase(0, 2);
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        kv.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
    }
    return kv;
}

}  // namespace hadamard
