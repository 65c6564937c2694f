#pragma once

#include <string>
#include <vector>

namespace exmax::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

constexpr int kCriteria = 8;

/// Runs criterion id (1..8); a criterion over its time budget fails.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

/// "[PASS] 3 sl28 form ... (12.3 s / 60 s)"
std::string format_line(const CriterionResult& r);

}  // namespace exmax::acceptance
