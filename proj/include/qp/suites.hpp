#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qp/propagator.hpp"

namespace qp {

struct SuiteConfig {
    unsigned long long seed = 42;
    double tol = 0.0;  // 0 = per-suite default (1e-9 for float suites, 1e-12 for arch)
    long term_budget = kDefaultTermBudget;
    int count = 0;                      // 0 = suite default
    std::optional<Place> place_filter;  // restrict to a single place
};

struct CheckResult {
    std::string check;
    std::string inputs;
    std::string expected;
    std::string got;
    double tol = 0.0;
    bool pass = false;
};

// Suite names: lambda, gauss, group, norms, uv, unitarity, slice, delta, arch.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace qp
