#pragma once

#include "wiggly/config.hpp"

#include <string>
#include <vector>

namespace wiggly {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool hard = true;  // soft checks only warn
    double value = 0.0;
    double bound = 0.0;
};

struct VerifySuite {
    std::string name;
    std::vector<CheckResult> checks;

    int passed() const;
    int failed() const;
};

struct VerifyReport {
    std::vector<VerifySuite> suites;

    bool hard_failure() const;
    int total_passed() const;
    int total_failed() const;
};

// Runs the invariant suites at the tolerances in cfg (scaled by
// cfg.tol_scale). Hard failures drive the CLI exit code; conjecture-level
// checks are soft and only warn.
VerifyReport run_verification(const ExperimentConfig& cfg);

std::string format_report(const VerifyReport& rep);

}  // namespace wiggly
