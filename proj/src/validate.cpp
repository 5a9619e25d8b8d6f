#include "qest/validate.hpp"

#include <cmath>

#include "qest/anticommutator.hpp"
#include "qest/closedform.hpp"
#include "qest/cooperative.hpp"
#include "qest/reference.hpp"
#include "qest/rng.hpp"

namespace qest {

namespace {
constexpr double kPi = 3.14159265358979323846;

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) { return gue_sample(rng, n); }

ComplexMatrix random_density(Rng& rng, std::size_t n) {
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = cplx(rng.next_normal(), rng.next_normal());
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

} // namespace

namespace reference {

ComplexMatrix u_closed(double sx, double sy, double sz) {
    ComplexMatrix u(4);
    const cplx em = std::exp(cplx(0.0, -0.5 * sz)), ep = std::exp(cplx(0.0, 0.5 * sz));
    const double cm = std::cos(0.5 * (sx - sy)), sm = std::sin(0.5 * (sx - sy));
    const double cp = std::cos(0.5 * (sx + sy)), sp = std::sin(0.5 * (sx + sy));
    const cplx mi(0.0, -1.0);
    u(0, 0) = em * cm;
    u(0, 3) = mi * em * sm;
    u(1, 1) = ep * cp;
    u(1, 2) = mi * ep * sp;
    u(2, 1) = mi * ep * sp;
    u(2, 2) = ep * cp;
    u(3, 0) = mi * em * sm;
    u(3, 3) = em * cm;
    return u;
}

ComplexMatrix rho_joint_closed(double sx, double sy, double sz, double x, double phi) {
    const double cx = std::cos(sx), cy = std::cos(sy);
    const double snx = std::sin(sx), sny = std::sin(sy);
    const double g = std::sqrt(x * (1.0 - x));
    const cplx em = std::exp(cplx(0.0, -(sz + phi))), ep = std::exp(cplx(0.0, sz + phi));
    const cplx i(0.0, 1.0);
    ComplexMatrix r(4);
    r(0, 0) = 0.5 * x * (1.0 + cx * cy + snx * sny);
    r(0, 1) = 0.5 * i * g * (snx + sny) * em;
    r(0, 2) = 0.5 * g * (cx + cy) * em;
    r(0, 3) = 0.5 * i * x * (snx * cy - cx * sny);
    r(1, 1) = 0.5 * (1.0 - x) * (1.0 - cx * cy + snx * sny);
    r(1, 2) = -0.5 * i * (1.0 - x) * (cx * sny + snx * cy);
    r(1, 3) = -0.5 * g * (cx - cy) * ep;
    r(2, 2) = 0.5 * (1.0 - x) * (1.0 + cx * cy - snx * sny);
    r(2, 3) = 0.5 * i * g * (snx - sny) * ep;
    r(3, 3) = 0.5 * x * (1.0 - cx * cy - snx * sny);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < a; ++b) r(a, b) = std::conj(r(b, a));
    return r;
}

ComplexMatrix rho_b_closed(double sx, double sy, double sz, double x, double phi) {
    const double cx = std::cos(sx), cy = std::cos(sy);
    const double snx = std::sin(sx), sny = std::sin(sy);
    ComplexMatrix r(2);
    r(0, 0) = 0.5 + (x - 0.5) * cx * cy + 0.5 * snx * sny;
    r(0, 1) = std::sqrt((1.0 - x) * x) *
              cplx(cy * std::cos(sz + phi), -cx * std::sin(sz + phi));
    r(1, 0) = std::conj(r(0, 1));
    r(1, 1) = 0.5 - (x - 0.5) * cx * cy - 0.5 * snx * sny;
    return r;
}

ComplexMatrix rho_f_closed(double sx, double sy, double sz, double x, double phi) {
    const double cx = std::cos(sx), cy = std::cos(sy);
    const double snx = std::sin(sx), sny = std::sin(sy);
    ComplexMatrix r(2);
    r(0, 0) = 0.5 + (x - 0.5) * snx * sny + 0.5 * cx * cy;
    r(0, 1) = std::sqrt((1.0 - x) * x) *
              cplx(sny * std::sin(sz + phi), snx * std::cos(sz + phi));
    r(1, 0) = std::conj(r(0, 1));
    r(1, 1) = 0.5 - (x - 0.5) * snx * sny - 0.5 * cx * cy;
    return r;
}

} // namespace reference

std::vector<CheckResult> run_validation(const ValidationConfig& vc) {
    std::vector<CheckResult> out;
    auto add = [&](const std::string& name, double residual, double tolerance) {
        out.push_back({name, residual <= tolerance, residual, tolerance});
    };

    const Prior pd_prior = Prior::uniform(0.0, kPi / 2.0, vc.nodes);

    // closed-form agreement, B side
    {
        double worst = 0.0;
        for (int gi = 0; gi <= 10; ++gi) {
            const double g = gi * 0.1;
            const IsometryFamily fam = phase_damp_family(pd_prior);
            const double num = personik_solve(moments_B(fam, {g, 0.0})).cost;
            worst = std::max(worst, std::abs(num - closedform::cb_min(g)));
        }
        add("pdamp-cb-closedform", worst, 1e-9);
    }
    // closed-form agreement, F side + monotonicity
    {
        double worst = 0.0, worst_mono = 0.0, prev = -1.0;
        for (int gi = 0; gi <= 10; ++gi) {
            const double g = gi * 0.1;
            const IsometryFamily fam = phase_damp_family(pd_prior);
            const double num = personik_solve(moments_F(fam, {g, 0.0})).cost;
            worst = std::max(worst, std::abs(num - closedform::cf_min(g)));
            if (gi > 0) worst_mono = std::max(worst_mono, prev - num);
            prev = num;
        }
        add("pdamp-cf-closedform", worst, 1e-9);
        add("pdamp-cf-monotone", worst_mono, 1e-12);
    }
    // privacy formula internal consistency
    {
        double worst = 0.0;
        for (int gi = 0; gi <= 100; ++gi) {
            const double g = gi * 0.01;
            const double direct =
                std::max(closedform::cf_min(g) - closedform::cb_min(g), 0.0);
            worst = std::max(worst, std::abs(closedform::pe(g) - direct));
        }
        add("pe-consistency", worst, 1e-12);
    }
    // numeric privacy sign structure and argmax
    {
        const IsometryFamily fam = phase_damp_family(pd_prior);
        const double g0 = closedform::gamma0();
        const double gs = closedform::gamma_star();
        double worst_sign = 0.0;
        double best_val = -1.0, best_g = 0.0;
        for (int gi = 0; gi <= 1000; ++gi) {
            const double g = gi * 1e-3;
            const double cB = personik_solve(moments_B(fam, {g, 0.0})).cost;
            const double cF = personik_solve(moments_F(fam, {g, 0.0})).cost;
            const double p = privacy(cB, cF);
            const bool inside = g > g0 && g < 1.0 - 1e-12;
            if (inside && p <= 1e-12) worst_sign = std::max(worst_sign, 1.0);
            if (!inside && p > 1e-12) worst_sign = std::max(worst_sign, p);
            if (p > best_val) {
                best_val = p;
                best_g = g;
            }
        }
        add("pe-sign-structure", worst_sign, 1e-12);
        add("pe-argmax-vs-gamma-star", std::abs(best_g - gs), 1e-3);
        add("pe-root-at-gamma0", closedform::pe(g0), 1e-9);
    }
    // isometry property
    {
        add("isometry-pdamp", check_isometry(phase_damp_family(pd_prior), 64), 1e-12);
        double worst = 0.0;
        const CoreUnitaryTarget targets[] = {
            {Component::s_x, 0.7, 0.3},
            {Component::s_y, 1.2, 0.4},
            {Component::s_z, 1.3, 0.9},
        };
        for (const auto& t : targets)
            worst = std::max(worst, check_isometry(core_family_uniform(t, vc.nodes), 64));
        add("isometry-core", worst, 1e-12);
    }
    // closed-form reference vs constructed states on the 5x5x5x3x3 grid
    {
        double worst = 0.0;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
                for (int c = 0; c < 5; ++c) {
                    const double sx = a * kPi / 8.0;
                    const double sy_v = sx * b / 4.0;
                    const double sz_v = sy_v * c / 4.0;
                    const ComplexMatrix u = core_unitary(sx, sy_v, sz_v);
                    worst = std::max(
                        worst, (u - reference::u_closed(sx, sy_v, sz_v)).frobenius_norm());
                    for (double g : {0.0, 0.3, 0.8})
                        for (double phi : {0.0, kPi / 5.0, kPi}) {
                            const ComplexMatrix rhoAE =
                                kron(probe_density({g, phi}),
                                     ComplexMatrix::diag({1.0, 0.0}));
                            const ComplexMatrix joint = u * rhoAE * u.adjoint();
                            worst = std::max(worst,
                                             (joint - reference::rho_joint_closed(
                                                          sx, sy_v, sz_v, g, phi))
                                                 .frobenius_norm());
                            worst = std::max(
                                worst, (partial_trace(joint, 2, 2, Keep::B) -
                                        reference::rho_b_closed(sx, sy_v, sz_v, g, phi))
                                           .frobenius_norm());
                            worst = std::max(
                                worst, (partial_trace(joint, 2, 2, Keep::F) -
                                        reference::rho_f_closed(sx, sy_v, sz_v, g, phi))
                                           .frobenius_norm());
                        }
                }
        add("twoqubit-reference-grid", worst, 1e-10);
    }
    // phase damping Kraus forms against the dilation
    {
        Rng rng(42);
        const IsometryFamily fam = phase_damp_family(pd_prior);
        const double s = kPi / 3.0;
        const ComplexMatrix rho = random_density(rng, 2);
        const ComplexMatrix j = joint_output(fam, rho, s);
        ComplexMatrix k0(2), k1(2), kt0(2), kt1(2);
        k0(0, 0) = 1.0;
        k0(1, 1) = std::cos(s);
        k1(1, 1) = -std::sin(s);
        kt0(0, 0) = 1.0;
        kt1(0, 1) = std::cos(s);
        kt1(1, 1) = -std::sin(s);
        const ComplexMatrix b_kraus = k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
        const ComplexMatrix f_kraus = kt0 * rho * kt0.adjoint() + kt1 * rho * kt1.adjoint();
        const double rb = (partial_trace(j, 2, 2, Keep::B) - b_kraus).frobenius_norm();
        const double rf = (partial_trace(j, 2, 2, Keep::F) - f_kraus).frobenius_norm();
        add("pdamp-kraus-forms", std::max(rb, rf), 1e-12);
    }
    // anticommutator solver sanity
    {
        Rng rng(7);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const std::size_t n = (k % 2 == 0) ? 2 : 4;
            ComplexMatrix a = random_hermitian(rng, n);
            // shift to positive definite so the system is nondegenerate
            ComplexMatrix shift = ComplexMatrix::identity(n);
            shift *= 4.0 + a.frobenius_norm();
            a += shift;
            const ComplexMatrix b = random_hermitian(rng, n);
            const AnticommutatorSolution s = solve_anticommutator(a, b);
            worst = std::max(worst, s.residual / std::max(b.frobenius_norm(), 1e-300));
            worst = std::max(worst, check_hermitian(s.x).max_asymmetry);
        }
        add("anticommutator-residual", worst, 1e-8);
    }
    // quadrature convergence 48 vs 96 nodes
    {
        Rng rng(11);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const ProbeState pr{rng.next_unit(), 2.0 * kPi * rng.next_unit()};
            for (int fam_ix = 0; fam_ix < 2; ++fam_ix) {
                IsometryFamily f48, f96;
                if (fam_ix == 0) {
                    f48 = phase_damp_family(Prior::uniform(0.0, kPi / 2.0, 48));
                    f96 = phase_damp_family(Prior::uniform(0.0, kPi / 2.0, 96));
                } else {
                    const CoreUnitaryTarget t{Component::s_y, 1.2, 0.3};
                    f48 = core_family_uniform(t, 48);
                    f96 = core_family_uniform(t, 96);
                }
                const MomentOperators a = moments_B(f48, pr), b = moments_B(f96, pr);
                worst = std::max(worst, (a.w0 - b.w0).frobenius_norm());
                worst = std::max(worst, (a.w1 - b.w1).frobenius_norm());
            }
        }
        add("quadrature-48-vs-96", worst, 1e-12);
    }
    // algebraic cost vs direct quadrature
    {
        Rng rng(13);
        const IsometryFamily fam = phase_damp_family(pd_prior);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const ProbeState pr{0.3 + 0.1 * k, 0.2 * k};
            const MomentOperators m = moments_B(fam, pr);
            const ComplexMatrix s = random_hermitian(rng, 2);
            const double alg = cost_of(s, m);
            const double quad = cost_by_quadrature(
                [&](double sv) { return output_B(fam, pr, sv); }, fam.prior, s);
            worst = std::max(worst, std::abs(alg - quad));
        }
        add("cost-quadrature-consistency", worst, 1e-10);
    }
    // cooperative anchor at gamma = 0
    {
        const IsometryFamily fam = phase_damp_family(pd_prior);
        CoopConfig cfg;
        cfg.seed = 2024;
        const LocalEstimatorPair p = cooperative_min(fam, {0.0, 0.0}, cfg);
        add("coop-min-anchor", std::abs(p.cost - closedform::coop_min_at_zero()), 1e-6);
    }
    // spectral measurement completeness
    {
        Rng rng(17);
        double worst = 0.0;
        const ComplexMatrix h = random_hermitian(rng, 4);
        const auto meas = spectral_measurement(h);
        ComplexMatrix sum(4);
        for (const auto& mo : meas) {
            sum += mo.projector;
            worst = std::max(
                worst, (mo.projector * mo.projector - mo.projector).frobenius_norm());
        }
        worst = std::max(worst, (sum - ComplexMatrix::identity(4)).frobenius_norm());
        add("spectral-projectors", worst, 1e-10);
    }

    return out;
}

} // namespace qest
