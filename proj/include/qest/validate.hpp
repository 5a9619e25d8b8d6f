#pragma once

#include <string>
#include <vector>

#include "qest/closedform.hpp"
#include "qest/family.hpp"
#include "qest/moments.hpp"

namespace qest {

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct ValidationConfig {
    int nodes = 64;
    double tol = 1e-10;
};

/// Oracle-agreement suite: closed forms vs the numeric pipeline, state
/// construction vs reference formulas, solver residuals, quadrature
/// convergence. Everything here must pass on a healthy build.
std::vector<CheckResult> run_validation(const ValidationConfig& vc);

} // namespace qest
