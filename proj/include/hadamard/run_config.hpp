#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hadamard/bounds.hpp"
#include "hadamard/domain.hpp"
#include "hadamard/identity.hpp"

namespace hadamard {

// Bad flag value, bad config line, or inconsistent flag combination.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Command { Lemma, Bound, Chain, Scan, Suite };
enum class OutputFormat { Json, Csv };
enum class ScanKind { Gap, Sweep, Compare };
enum class T3Selection { Verbatim, Sharpened, Both };

std::string_view to_string(Command c) noexcept;
std::string_view to_string(OutputFormat f) noexcept;
std::string_view to_string(ScanKind k) noexcept;
std::string_view to_string(T3Selection t) noexcept;
Command parse_command(std::string_view text);

std::vector<T3ConstantMode> t3_modes(T3Selection t);

struct RunConfig {
    Command command = Command::Lemma;
    std::optional<std::string> fn;
    std::optional<std::string> catalog;
    std::optional<Rect> rect;
    std::optional<EvalPoint> point;
    double s = 1.0;
    std::optional<double> q;
    TheoremId theorem = TheoremId::T1;
    NormalizationMode mode = NormalizationMode::Corrected;
    T3Selection t3_constant = T3Selection::Both;
    int grid = 8;
    std::uint64_t seed = 0x5eed;
    std::optional<std::string> out;
    OutputFormat format = OutputFormat::Json;
    // Overrides every tolerance when set.
    std::optional<double> tol;
    bool certify = false;
    bool include_verbatim_identity = false;
    bool refine = false;
    ScanKind kind = ScanKind::Gap;
    std::vector<double> s_list{0.25, 0.5, 0.75, 1.0};
    IntegrationPath path = IntegrationPath::Auto;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Ordered key/value pairs. Keys are the long flag names without "--".
using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Every key the config format knows, in canonical order.
const std::vector<std::string>& config_keys();
bool is_boolean_key(std::string_view key);

// Throws ConfigError for unknown keys and unparsable values, and the domain
// exceptions (DegenerateRect, BadExponent) for out-of-range ones.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
RunConfig from_key_values(const KeyValues& kv);

// Canonical form; unset optionals are omitted.
KeyValues to_key_values(const RunConfig& cfg);

// Flat "key = value" lines; '#' starts a comment line.
std::string format_config(const RunConfig& cfg);
KeyValues parse_config_text(std::string_view text);

// %.17g
std::string format_double(double v);
double parse_double(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

}  // namespace hadamard
