#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hadamard/run_config.hpp"

namespace hadamard {

inline constexpr std::string_view kToolName = "hadamard-rect";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Exit codes of run_cli.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

// Parses the command line (without the program name), merging a --config
// file under the flags. Throws ConfigError and the domain exceptions.
RunConfig parse_arguments(const std::vector<std::string>& args);

// Runs one command. Reports go to --out (or out), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ISO 8601 UTC; SOURCE_DATE_EPOCH when set, otherwise the current time.
std::string run_timestamp();

// Explanation attached to reports carrying the given note key.
std::string_view note_text(std::string_view key) noexcept;

}  // namespace hadamard
