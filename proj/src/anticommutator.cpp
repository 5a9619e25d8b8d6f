#include "qest/anticommutator.hpp"

#include <cmath>

#include "qest/eig.hpp"

namespace qest {

AnticommutatorSolution solve_anticommutator(const ComplexMatrix& a, const ComplexMatrix& b,
                                            double tol) {
    require_hermitian(a, 1e-10, "solve_anticommutator: a");
    require_hermitian(b, 1e-10, "solve_anticommutator: b");
    if (a.dim() != b.dim())
        throw std::invalid_argument("solve_anticommutator: dimension mismatch");

    const std::size_t n = a.dim();
    const EigenDecomposition ed = herm_eig(a);
    const ComplexMatrix& q = ed.eigenvectors;
    const ComplexMatrix bt = q.adjoint() * b * q;

    double lam_max = 0.0;
    for (double l : ed.eigenvalues) lam_max = std::max(lam_max, std::abs(l));
    const double thr = tol * std::max(lam_max, 1e-300);
    const double b_thr = tol * std::max(b.frobenius_norm(), 1e-300);

    AnticommutatorSolution sol;
    ComplexMatrix xt(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double den = ed.eigenvalues[i] + ed.eigenvalues[j];
            if (std::abs(den) > thr) {
                xt(i, j) = 2.0 * bt(i, j) / den;
            } else {
                if (std::abs(bt(i, j)) > b_thr)
                    throw inconsistent_anticommutator(
                        "solve_anticommutator: right side has weight on a null eigenpair");
                xt(i, j) = 0.0;
                sol.degenerate = true;
            }
        }
    }

    ComplexMatrix x = q * xt * q.adjoint();
    // symmetrize away eigensolver roundoff
    ComplexMatrix xa = x.adjoint();
    x += xa;
    x *= 0.5;
    sol.x = std::move(x);
    sol.residual = (anticommutator(a, sol.x) - 2.0 * b).frobenius_norm();
    return sol;
}

} // namespace qest
