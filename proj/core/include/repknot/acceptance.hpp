#pragma once

#include <string>
#include <vector>

namespace repknot::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Run the numbered verification criteria (1-9).  Exceptions are caught and
// reported as failures.
std::vector<CriterionResult> run_all();

CriterionResult run_criterion(int id);

}  // namespace repknot::acceptance
