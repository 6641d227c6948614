#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hadamard {

enum class CheckStatus { Pass, Fail, KnownTypo };

std::string_view to_string(CheckStatus status) noexcept;

// One row of the acceptance battery. worst is the largest deviation seen
// (or the violation count for counting checks), compared against tolerance.
struct SuiteCheck {
    int criterion = 0;
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double worst = 0.0;
    double tolerance = 0.0;
    std::size_t count = 0;
    std::string detail;
};

struct SuiteOptions {
    // Replaces every floating-point tolerance of the battery when set.
    std::optional<double> tol;
    // Adds verbatim-mode identity checks; those failing on non-unit
    // rectangles are reported as KnownTypo.
    bool include_verbatim_identity = false;
    std::uint64_t seed = 0x5eed;
};

// Runs criteria 1-9 of the acceptance battery in a fixed order.
std::vector<SuiteCheck> run_suite(const SuiteOptions& opts = {});

}  // namespace hadamard
