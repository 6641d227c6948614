// Acceptance runner: one PASS/FAIL line per criterion of the battery.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hadamard/cli.hpp"
#include "hadamard/suite.hpp"

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs the suite command twice with the same arguments and compares bytes.
bool reports_identical(const std::string& format, std::string& detail) {
    const auto path = std::filesystem::temp_directory_path() / ("hadamard_acceptance." + format);
    const std::vector<std::string> args{"suite", "--format", format, "--out", path.string()};
    std::string first;
    for (int run = 0; run < 2; ++run) {
        std::ostringstream out, err;
        if (hadamard::run_cli(args, out, err) != hadamard::kExitPass) {
            detail = format + " run " + std::to_string(run) + " failed: " + err.str();
            return false;
        }
        const std::string bytes = slurp(path) + out.str();
        if (run == 0) {
            first = bytes;
        } else if (bytes != first) {
            detail = format + " reports differ";
            return false;
        }
    }
    std::filesystem::remove(path);
    return true;
}

}  // namespace

int main() {
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    const auto checks = hadamard::run_suite();

    std::map<int, bool> pass;
    std::map<int, std::vector<std::string>> notes;
    for (int c = 1; c <= 9; ++c) pass[c] = true;
    for (const auto& ch : checks) {
        if (ch.status == hadamard::CheckStatus::Fail) {
            pass[ch.criterion] = false;
            notes[ch.criterion].push_back(ch.name + ": " + ch.detail);
        }
    }
    for (const std::string fmt : {"json", "csv"}) {
        std::string detail;
        if (!reports_identical(fmt, detail)) {
            pass[9] = false;
            notes[9].push_back(detail);
        }
    }

    bool all = true;
    for (const auto& [c, ok] : pass) {
        std::printf("%s criterion %d\n", ok ? "PASS" : "FAIL", c);
        for (const auto& n : notes[c]) std::printf("    %s\n", n.c_str());
        all = all && ok;
    }
    return all ? 0 : 1;
}
