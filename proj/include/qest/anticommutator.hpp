#pragma once

#include <stdexcept>

#include "qest/matrix.hpp"

namespace qest {

/// No exact solution: the equation is degenerate (lambda_i + lambda_j ~ 0 on
/// some eigenpair of a) while the right side has weight on that pair.
struct inconsistent_anticommutator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnticommutatorSolution {
    ComplexMatrix x;
    bool degenerate = false;
    double residual = 0.0; // ||a x + x a - 2 b||_F
};

/// Solve a x + x a = 2 b for Hermitian a, b. In the eigenbasis of a,
/// x_ij = 2 b_ij / (lambda_i + lambda_j); pairs with |lambda_i + lambda_j|
/// <= tol * max|lambda| are zeroed (minimum-norm representative) and flagged
/// degenerate when the matching b component is negligible, otherwise the
/// system is inconsistent.
AnticommutatorSolution solve_anticommutator(const ComplexMatrix& a, const ComplexMatrix& b,
                                            double tol = 1e-10);

} // namespace qest
