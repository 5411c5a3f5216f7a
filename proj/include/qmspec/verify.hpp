#pragma once

#include <string>
#include <vector>

namespace qmspec {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // expected-vs-got summary, case counts, ...
    double millis = 0.0;
};

/// Suite registry. "all" runs every suite whose size bound admits n.
std::vector<std::string> suite_names();

/// Upper n bound for a suite; throws ParseError for unknown names.
int suite_max_n(const std::string& suite);

/// Runs one suite (or "all") at grid size n. Throws SizeTooLargeError
/// when n exceeds the bound of an explicitly requested suite.
std::vector<CheckResult> run_suite(const std::string& suite, int n, int jobs);

} // namespace qmspec
