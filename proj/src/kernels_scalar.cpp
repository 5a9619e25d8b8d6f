#include "qest/kernels.hpp"

#include <cstring>

namespace qest::kernels {
namespace {

// Explicit re/im arithmetic, not std::complex operator*: keeps the exact
// op sequence identical to the SIMD variants (no branching on NaN/Inf).
inline void axpy_range(std::size_t n, double ar, double ai,
                       const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i]     += ar * xr - ai * xi;
        y[2 * i + 1] += ar * xi + ai * xr;
    }
}

void axpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
    axpy_range(n, a.real(), a.imag(),
               reinterpret_cast<const double*>(x), reinterpret_cast<double*>(y));
}

void scale_scalar(std::size_t n, cplx a, const cplx* x, cplx* out) {
    const double ar = a.real(), ai = a.imag();
    const double* xd = reinterpret_cast<const double*>(x);
    double* od = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        od[2 * i]     = ar * xr - ai * xi;
        od[2 * i + 1] = ar * xi + ai * xr;
    }
}

void matmul_scalar(std::size_t m, std::size_t k, std::size_t n,
                   const cplx* A, const cplx* B, cplx* C) {
    std::memset(C, 0, sizeof(cplx) * m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const cplx a = A[i * k + p];
            if (a.real() == 0.0 && a.imag() == 0.0) continue;
            axpy_range(n, a.real(), a.imag(),
                       reinterpret_cast<const double*>(B + p * n),
                       reinterpret_cast<double*>(C + i * n));
        }
    }
}

double norm_sq_scalar(std::size_t n, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) acc += xd[i] * xd[i];
    return acc;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{axpy_scalar, scale_scalar, matmul_scalar,
                         norm_sq_scalar, "scalar"};
    return ops;
}

} // namespace qest::kernels
