#pragma once

// Named self-check suites behind `ghzsim verify <suite>`. Each check reports
// the measured value next to its expected value and tolerance.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ghz {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
};

std::vector<std::string_view> suite_names();

/// Throws InvalidInput for an unknown suite.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

/// One line per check: PASS/FAIL, name, measured, expected, tolerance.
std::string format_report(const SuiteReport& report);

}  // namespace ghz
