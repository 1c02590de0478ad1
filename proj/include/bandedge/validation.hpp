#pragma once

#include <string>
#include <vector>

namespace bandedge {

struct ValidationCase {
    std::string name;
    double max_abs_deviation = 0;
    double tolerance = 0;
    bool passed = false;
};

struct ValidationReport {
    std::vector<ValidationCase> cases;
    std::vector<std::string> diagnostics;  // informational, never gating
    bool overall_passed = true;
    double seconds = 0;

    void add(std::string name, double deviation, double tolerance);
    void merge(const ValidationReport& other);
};

inline constexpr int criterion_count = 10;

/// Runs one acceptance criterion (1..10). Throws UsageError for other numbers.
ValidationReport run_criterion(int n);
ValidationReport run_acceptance();

}  // namespace bandedge
