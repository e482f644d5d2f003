#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qig {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance suite, one pass/fail line per criterion.
/// Returns the number of failed criteria.
int run_acceptance(std::ostream& os, const std::vector<int>& only = {});

}  // namespace qig
