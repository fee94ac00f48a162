#pragma once

#include <string>
#include <vector>

namespace exc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

enum class VerifyLevel { Quick, Full };

// Runs one acceptance criterion (1..11).
CriterionResult run_criterion(int id);
// Quick: golden moment tables + Dyck critical constants. Full: all criteria.
std::vector<CriterionResult> run_acceptance(VerifyLevel level);
bool all_passed(const std::vector<CriterionResult>& results);
std::string format_result_line(const CriterionResult& r);

}  // namespace exc
