#include "qest/kernels.hpp"

#include <arm_neon.h>
#include <cstring>

// NEON variants. float64x2 holds one complex double; the sign vector turns
// the cross-term add into the same add/sub pattern as the scalar reference
// (a - b == a + (-b) exactly in IEEE754).
namespace qest::kernels {
namespace {

inline float64x2_t cmul_vec(float64x2_t are, float64x2_t aim, float64x2_t x) {
    const float64x2_t sign = {-1.0, 1.0};
    const float64x2_t t1 = vmulq_f64(are, x);
    const float64x2_t xs = vextq_f64(x, x, 1);
    const float64x2_t t2 = vmulq_f64(vmulq_f64(aim, xs), sign);
    return vaddq_f64(t1, t2);
}

inline void axpy_range(std::size_t n, double ar, double ai,
                       const double* x, double* y) {
    const float64x2_t vre = vdupq_n_f64(ar);
    const float64x2_t vim = vdupq_n_f64(ai);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = vld1q_f64(x + 2 * i);
        const float64x2_t yv = vld1q_f64(y + 2 * i);
        vst1q_f64(y + 2 * i, vaddq_f64(yv, cmul_vec(vre, vim, xv)));
    }
}

void axpy_neon(std::size_t n, cplx a, const cplx* x, cplx* y) {
    axpy_range(n, a.real(), a.imag(),
               reinterpret_cast<const double*>(x), reinterpret_cast<double*>(y));
}

void scale_neon(std::size_t n, cplx a, const cplx* x, cplx* out) {
    const float64x2_t vre = vdupq_n_f64(a.real());
    const float64x2_t vim = vdupq_n_f64(a.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* od = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < n; ++i)
        vst1q_f64(od + 2 * i, cmul_vec(vre, vim, vld1q_f64(xd + 2 * i)));
}

void matmul_neon(std::size_t m, std::size_t k, std::size_t n,
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

double norm_sq_neon(std::size_t n, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vld1q_f64(xd + 2 * i);
        acc = vaddq_f64(acc, vmulq_f64(v, v));
    }
    return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

} // namespace

const Ops* neon_ops_impl() {
    static const Ops ops{axpy_neon, scale_neon, matmul_neon, norm_sq_neon, "neon"};
    return &ops;
}

} // namespace qest::kernels
