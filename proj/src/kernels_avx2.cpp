#include "qest/kernels.hpp"

#include <cstring>
#include <immintrin.h>

// AVX2 variants. One 256-bit lane holds two complex doubles; the complex
// product (ar*xr - ai*xi, ar*xi + ai*xr) maps onto mul + addsub with a
// pair-swap permute. No FMA, so results match the scalar reference bitwise.
namespace qest::kernels {
namespace {

inline __m256d cmul_vec(__m256d are, __m256d aim, __m256d x) {
    const __m256d t1 = _mm256_mul_pd(are, x);
    const __m256d xs = _mm256_permute_pd(x, 0x5); // swap re/im in each pair
    const __m256d t2 = _mm256_mul_pd(aim, xs);
    return _mm256_addsub_pd(t1, t2);
}

inline void axpy_range(std::size_t n, double ar, double ai,
                       const double* x, double* y) {
    const __m256d vre = _mm256_set1_pd(ar);
    const __m256d vim = _mm256_set1_pd(ai);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * i);
        const __m256d yv = _mm256_loadu_pd(y + 2 * i);
        _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(yv, cmul_vec(vre, vim, xv)));
    }
    for (; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i]     += ar * xr - ai * xi;
        y[2 * i + 1] += ar * xi + ai * xr;
    }
}

void axpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
    axpy_range(n, a.real(), a.imag(),
               reinterpret_cast<const double*>(x), reinterpret_cast<double*>(y));
}

void scale_avx2(std::size_t n, cplx a, const cplx* x, cplx* out) {
    const __m256d vre = _mm256_set1_pd(a.real());
    const __m256d vim = _mm256_set1_pd(a.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* od = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(od + 2 * i, cmul_vec(vre, vim, _mm256_loadu_pd(xd + 2 * i)));
    for (; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        od[2 * i]     = a.real() * xr - a.imag() * xi;
        od[2 * i + 1] = a.real() * xi + a.imag() * xr;
    }
}

void matmul_avx2(std::size_t m, std::size_t k, std::size_t n,
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

double norm_sq_avx2(std::size_t n, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    const std::size_t len = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_loadu_pd(xd + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double out = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < len; ++i) out += xd[i] * xd[i];
    return out;
}

} // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops{axpy_avx2, scale_avx2, matmul_avx2, norm_sq_avx2, "avx2"};
    return &ops;
}

} // namespace qest::kernels
