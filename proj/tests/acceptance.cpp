// Acceptance gate: every release-blocking criterion runs here with pinned
// seeds, counts, tolerances, and wall-clock budgets. One line per criterion.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qp/suites.hpp"

using namespace qp;

namespace {

struct Criterion {
    std::string name;
    std::vector<std::pair<std::string, SuiteConfig>> suites;
    double seconds_budget = 0.0;
};

SuiteConfig cfg(int count, double tol = 0.0) {
    SuiteConfig c;
    c.seed = 42;
    c.count = count;
    c.tol = tol;
    return c;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"lambda-identities", {{"lambda", cfg(1000)}}, 5.0},
        {"gauss-oracle", {{"gauss", cfg(50, 1e-9)}}, 60.0},
        {"group-property", {{"group", cfg(0)}}, 30.0},
        {"normalization-and-uv", {{"norms", cfg(50)}, {"uv", cfg(50)}}, 10.0},
        {"time-slicing", {{"slice", cfg(0)}}, 10.0},
        {"unitarity-offdiag", {{"unitarity", cfg(25, 1e-9)}}, 60.0},
        {"delta-evolution", {{"delta", cfg(0, 1e-9)}}, 60.0},
        {"archimedean-correspondence", {{"arch", cfg(50, 1e-12)}}, 1.0},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = true;
        std::string witness;
        int checks = 0;
        try {
            for (const auto& [suite, conf] : c.suites) {
                for (const CheckResult& r : run_suite(suite, conf)) {
                    ++checks;
                    if (!r.pass) {
                        pass = false;
                        if (witness.empty()) witness = r.check + ": " + r.got;
                    }
                }
            }
        } catch (const std::exception& e) {
            pass = false;
            witness = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.seconds_budget) {
            pass = false;
            if (witness.empty()) {
                witness = "exceeded " + std::to_string(c.seconds_budget) + "s budget";
            }
        }
        if (!pass) ++failures;
        std::printf("%s %-28s %3d checks  %6.2fs%s%s\n", pass ? "PASS" : "FAIL", c.name.c_str(),
                    checks, secs, witness.empty() ? "" : "  ", witness.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
