#pragma once

#include <complex>
#include <cstddef>

namespace qest::kernels {

using cplx = std::complex<double>;

// Low-level kernels on interleaved complex arrays ([re, im, re, im, ...]).
// All variants implement the same operation with the same per-element
// formulas and accumulation order; SIMD versions differ from the scalar
// reference only by lane-parallel reductions in norm_sq.
struct Ops {
    // y[i] += a * x[i]
    void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
    // out[i] = a * x[i]
    void (*scale)(std::size_t n, cplx a, const cplx* x, cplx* out);
    // C = A * B with A (m x k), B (k x n), C (m x n), row-major.
    // C must not alias A or B.
    void (*matmul)(std::size_t m, std::size_t k, std::size_t n,
                   const cplx* A, const cplx* B, cplx* C);
    // sum_i |x[i]|^2
    double (*norm_sq)(std::size_t n, const cplx* x);
    const char* name;
};

const Ops& scalar_ops();

// Best variant for the running CPU, resolved once at startup.
const Ops& active();

// Variant accessors for equivalence tests; null when not built or the CPU
// lacks the feature.
const Ops* avx2_ops();
const Ops* neon_ops();

// Override the active implementation (tests only). Pass nullptr to restore
// automatic selection.
void force(const Ops* ops);

} // namespace qest::kernels
