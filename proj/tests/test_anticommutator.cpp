#include <doctest.h>

#include <cmath>

#include "qest/anticommutator.hpp"
#include "qest/family.hpp"
#include "qest/moments.hpp"
#include "qest/rng.hpp"

#if defined(QEST_HAVE_EIGEN)
#include <Eigen/Dense>
#endif

using namespace qest;

namespace {
constexpr double kPi = 3.14159265358979323846;

ComplexMatrix shifted_pd(Rng& rng, std::size_t n) {
    ComplexMatrix a = gue_sample(rng, n);
    ComplexMatrix shift = ComplexMatrix::identity(n);
    shift *= 4.0 + a.frobenius_norm();
    a += shift;
    return a;
}

#if defined(QEST_HAVE_EIGEN)
// Kronecker-vectorization route: (I (x) a + a^T (x) I) vec(x) = 2 vec(b),
// minimum-norm least squares by complete orthogonal decomposition. Fully
// independent of the eigenbasis solver.
ComplexMatrix vectorization_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = static_cast<int>(a.dim());
    Eigen::MatrixXcd ea(n, n), eb(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ea(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            eb(i, j) = b(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd big(n * n, n * n);
    // kron(P, Q) acting on column-major vec
    auto kron_e = [n](const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q) {
        Eigen::MatrixXcd r(n * n, n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.block(i * n, j * n, n, n) = p(i, j) * q;
        return r;
    };
    big = kron_e(eye, ea) + kron_e(ea.transpose(), eye);
    Eigen::VectorXcd rhs(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) rhs(j * n + i) = 2.0 * eb(i, j);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(big);
    const Eigen::VectorXcd x = cod.solve(rhs);
    ComplexMatrix out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = x(j * n + i);
    return out;
}
#endif

} // namespace

TEST_CASE("solve_anticommutator: identity weight returns b") {
    Rng rng(2);
    const ComplexMatrix b = gue_sample(rng, 3);
    const AnticommutatorSolution s = solve_anticommutator(ComplexMatrix::identity(3), b);
    CHECK((s.x - b).frobenius_norm() <= 1e-12 * std::max(1.0, b.frobenius_norm()));
    CHECK_FALSE(s.degenerate);
}

TEST_CASE("solve_anticommutator: phase damping moments at gamma = 1/2") {
    const IsometryFamily fam = phase_damp_family(Prior::uniform(0.0, kPi / 2.0, 64));
    const MomentOperators m = moments_B(fam, {0.5, 0.0});

    // frozen moment entries (symbolic integration of cos s and s cos s)
    CHECK(m.w0(0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(m.w0(0, 1).real() == doctest::Approx(1.0 / kPi).epsilon(1e-13));
    CHECK(m.w1(0, 0).real() == doctest::Approx(kPi / 8.0).epsilon(1e-13));
    CHECK(m.w1(0, 1).real() == doctest::Approx(0.5 - 1.0 / kPi).epsilon(1e-13));

    const AnticommutatorSolution s = solve_anticommutator(m.w0, m.w1);
    const double diag = (16.0 - 8.0 * kPi + kPi * kPi * kPi) / (4.0 * (kPi * kPi - 4.0));
    const double off = kPi * (kPi - 4.0) / (2.0 * (kPi * kPi - 4.0));
    CHECK(s.x(0, 0).real() == doctest::Approx(diag).epsilon(1e-12));
    CHECK(s.x(1, 1).real() == doctest::Approx(diag).epsilon(1e-12));
    CHECK(s.x(0, 1).real() == doctest::Approx(off).epsilon(1e-12));
    CHECK(diag == doctest::Approx(0.93165).epsilon(1e-4));
}

TEST_CASE("solve_anticommutator: hermitian output, small residual, determinism") {
    Rng rng(10);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = (rep % 2 == 0) ? 2 : 4;
        const ComplexMatrix a = shifted_pd(rng, n);
        const ComplexMatrix b = gue_sample(rng, n);
        const AnticommutatorSolution s = solve_anticommutator(a, b);
        CHECK(check_hermitian(s.x).max_asymmetry <= 1e-10);
        CHECK(s.residual <= 1e-8 * std::max(b.frobenius_norm(), 1e-300));
        const AnticommutatorSolution s2 = solve_anticommutator(a, b);
        CHECK((s.x - s2.x).frobenius_norm() == 0.0);
    }
}

TEST_CASE("solve_anticommutator: degenerate and inconsistent systems") {
    // a = |1><1|: the (0,0) eigenpair is null
    const ComplexMatrix a = ComplexMatrix::diag({0.0, 1.0});

    // consistent: b supported away from the null pair -> min-norm solution
    ComplexMatrix b = ComplexMatrix::diag({0.0, 3.0});
    const AnticommutatorSolution s = solve_anticommutator(a, b);
    CHECK(s.degenerate);
    CHECK(s.x(0, 0) == cplx(0.0, 0.0));
    CHECK(s.x(1, 1).real() == doctest::Approx(3.0).epsilon(1e-12));

    // inconsistent: b has weight on the null pair
    b(0, 0) = 1.0;
    CHECK_THROWS_AS(solve_anticommutator(a, b), inconsistent_anticommutator);

    // non-hermitian inputs rejected
    ComplexMatrix bad(2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(solve_anticommutator(bad, b), std::invalid_argument);
}

#if defined(QEST_HAVE_EIGEN)
TEST_CASE("solve_anticommutator: agrees with the vectorization least-squares oracle") {
    Rng rng(31);
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = (rep % 2 == 0) ? 2 : 4;
        const ComplexMatrix a = shifted_pd(rng, n);
        const ComplexMatrix b = gue_sample(rng, n);
        const AnticommutatorSolution s = solve_anticommutator(a, b);
        const ComplexMatrix ref = vectorization_solve(a, b);
        worst = std::max(worst,
                         (s.x - ref).frobenius_norm() / std::max(1.0, ref.frobenius_norm()));
    }
    CHECK(worst <= 1e-8);
}
#endif
