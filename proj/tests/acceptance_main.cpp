// Acceptance suite: one PASS/FAIL line per criterion; exit code is the
// number of failed criteria.

#include <iostream>

#include "qig/selftest.hpp"

int main() {
    const int failures = qig::run_acceptance(std::cout);
    std::cout << (failures == 0 ? "all criteria passed" : "failed criteria: ")
              << (failures == 0 ? "" : std::to_string(failures)) << "\n";
    return failures;
}
