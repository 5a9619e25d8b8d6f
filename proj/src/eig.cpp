#include "qest/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qest {
namespace {

double offdiag_norm_sq(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

} // namespace

// Cyclic complex Jacobi. For each pivot (p,q) the phase of a_pq is absorbed
// into column q, then the real rotation annihilating the pivot is applied to
// both A and the accumulated Q. Quadratically convergent; the matrices here
// are at most a few dozen rows.
EigenDecomposition herm_eig(const ComplexMatrix& m, double herm_tol) {
    require_hermitian(m, herm_tol, "herm_eig");
    const std::size_t n = m.dim();

    ComplexMatrix a = m;
    // enforce exact Hermitian symmetry of the working copy
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix q = ComplexMatrix::identity(n);

    const double norm = std::max(a.frobenius_norm(), 1e-300);
    const double stop = 1e-15 * norm;

    for (int sweep = 0; sweep < 64 && std::sqrt(offdiag_norm_sq(a)) > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t qq = p + 1; qq < n; ++qq) {
                const cplx apq = a(p, qq);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * norm) continue;
                const cplx phase = apq / mag;
                const double alpha = a(p, p).real();
                const double beta = a(qq, qq).real();
                const double tau = (beta - alpha) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // real-rotation basis is {|p>, conj(phase)|q>}:
                // col p -> c|p> - s conj(phase)|q>, col q -> s|p> + c conj(phase)|q>
                const cplx jp_q = -s * std::conj(phase);
                const cplx jq_q = c * std::conj(phase);
                // A <- J^dag A J : update columns then rows
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, qq);
                    a(k, p) = c * akp + jp_q * akq;
                    a(k, qq) = s * akp + jq_q * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(qq, k);
                    a(p, k) = c * apk + std::conj(jp_q) * aqk;
                    a(qq, k) = s * apk + std::conj(jq_q) * aqk;
                }
                a(p, qq) = 0.0;
                a(qq, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(qq, qq) = cplx(a(qq, qq).real(), 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx qkp = q(k, p), qkq = q(k, qq);
                    q(k, p) = c * qkp + jp_q * qkq;
                    q(k, qq) = s * qkp + jq_q * qkq;
                }
            }
        }
    }

    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = a(i, i).real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return lam[i] < lam[j]; });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        out.eigenvalues[col] = lam[src];
        // phase fix: first component above threshold made real-positive
        cplx fix = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx v = q(k, src);
            if (std::abs(v) > 1e-12) {
                fix = std::conj(v) / std::abs(v);
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, col) = fix * q(k, src);
    }
    return out;
}

} // namespace qest
