#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bachelier::validate {

/// One validation criterion outcome. A criterion passes when every one of
/// its sub-checks holds; `measured` and `tolerance` report the binding
/// sub-check.
struct CriterionResult {
    int id = 0;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::string filter;      // substring of the criterion name; empty runs all
    int inject_fail_id = 0;  // test hook: forces one criterion's tolerance to -1
    std::uint64_t seed = 20240901;
};

/// Runs the full validation suite at desk scale.
std::vector<CriterionResult> run_acceptance(const Options& opts);

void print_table(const std::vector<CriterionResult>& results, std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace bachelier::validate
