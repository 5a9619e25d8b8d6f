#include <doctest.h>

#include <cmath>

#include "qest/closedform.hpp"
#include "qest/cooperative.hpp"
#include "qest/rng.hpp"

using namespace qest;

namespace {
constexpr double kPi = 3.14159265358979323846;

Prior pd_prior() { return Prior::uniform(0.0, kPi / 2.0, 64); }

// joint moments of a constant product family rho(s) = rhoB (x) rhoF
MomentOperators const_product_moments(const ComplexMatrix& rhoB, const ComplexMatrix& rhoF) {
    const Prior prior = pd_prior();
    const ComplexMatrix rho = kron(rhoB, rhoF);
    return moments([&](double) { return rho; }, prior);
}

ComplexMatrix random_density(Rng& rng, std::size_t n) {
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = cplx(rng.next_normal(), rng.next_normal());
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

double unassisted_cost(const MomentOperators& joint, const Dims& dims) {
    const ComplexMatrix w0B = partial_trace(joint.w0, dims.dB, dims.dF, Keep::B);
    const ComplexMatrix w1B = partial_trace(joint.w1, dims.dB, dims.dF, Keep::B);
    MomentOperators mB{w0B, w1B, joint.m2, joint.mean};
    return personik_solve(mB).cost;
}

} // namespace

TEST_CASE("tilde_moments: identity helper recovers the B marginal") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    const MomentOperators joint = moments_joint(f, {0.4, 0.7});
    const Dims dims{2, 2};
    const auto [wtB, wtF] =
        tilde_moments(joint.w0, ComplexMatrix::identity(2), ComplexMatrix::identity(2), dims);
    CHECK((wtB - partial_trace(joint.w0, 2, 2, Keep::B)).frobenius_norm() <= 1e-12);
    CHECK((wtF - partial_trace(joint.w0, 2, 2, Keep::F)).frobenius_norm() <= 1e-12);
    CHECK(check_hermitian(wtB).is_hermitian);
    CHECK(check_hermitian(wtF).is_hermitian);
}

TEST_CASE("tilde_moments: product moment factorizes") {
    Rng rng(61);
    const ComplexMatrix a = random_density(rng, 2);
    const ComplexMatrix b = random_density(rng, 2);
    const ComplexMatrix w0 = kron(a, b);
    const ComplexMatrix sF = gue_sample(rng, 2);
    const auto [wtB, wtF] = tilde_moments(w0, ComplexMatrix::identity(2), sF, Dims{2, 2});
    ComplexMatrix expect = a;
    expect *= (b * sF).trace();
    CHECK((wtB - expect).frobenius_norm() <= 1e-12);
}

TEST_CASE("tilde_moments: phase damping at gamma = 0 collapses to |1><1|") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    const MomentOperators joint = moments_joint(f, {0.0, 0.0});
    Rng rng(62);
    const ComplexMatrix sF = gue_sample(rng, 2);
    const auto [wtB, wtF] = tilde_moments(joint.w0, ComplexMatrix::identity(2), sF, Dims{2, 2});
    // sigma_F = prior average of |psi_s><psi_s|
    const ComplexMatrix sigmaF = partial_trace(joint.w0, 2, 2, Keep::F);
    const cplx weight = (sigmaF * sF).trace();
    CHECK(std::abs(wtB(0, 0)) <= 1e-12);
    CHECK(std::abs(wtB(0, 1)) <= 1e-12);
    CHECK(std::abs(wtB(1, 1) - weight) <= 1e-12);
}

TEST_CASE("fixed_point_solve: constant product family reaches the prior variance") {
    Rng rng(63);
    const ComplexMatrix rhoB = random_density(rng, 2);
    const ComplexMatrix rhoF = random_density(rng, 2);
    const MomentOperators joint = const_product_moments(rhoB, rhoF);
    CoopConfig cfg;
    const LocalEstimatorPair p =
        fixed_point_solve(joint, Dims{2, 2}, cfg, ComplexMatrix::identity(2));
    const double variance = joint.m2 - joint.mean * joint.mean;
    CHECK(p.cost == doctest::Approx(variance).epsilon(1e-9));
    CHECK(p.report.converged);
}

TEST_CASE("fixed_point_solve: phase damping gamma = 0 anchor and kappa structure") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    const MomentOperators joint = moments_joint(f, {0.0, 0.0});
    CoopConfig cfg;
    const LocalEstimatorPair p =
        fixed_point_solve(joint, Dims{2, 2}, cfg, ComplexMatrix::identity(2));
    CHECK(p.cost == doctest::Approx(closedform::coop_min_at_zero()).epsilon(1e-9));
    CHECK(p.report.converged);
    CHECK(p.report.residual_1a <= cfg.tolerance);
    CHECK(p.report.residual_1b <= cfg.tolerance);
    // sB, sF diagonal with the fixed ratio sF(1,1)/sF(0,0) = (pi^2+4)/(pi^2-4)
    CHECK(std::abs(p.sB(0, 1)) <= 1e-9);
    CHECK(std::abs(p.sF(0, 1)) <= 1e-9);
    const double ratio = p.sF(1, 1).real() / p.sF(0, 0).real();
    CHECK(ratio == doctest::Approx((kPi * kPi + 4.0) / (kPi * kPi - 4.0)).epsilon(1e-8));
}

TEST_CASE("gue_random_search: identity candidate gives the unassisted baseline") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    for (double g : {0.0, 0.3, 0.8}) {
        const MomentOperators joint = moments_joint(f, {g, 0.5});
        CoopConfig cfg;
        cfg.restarts = 1;
        const LocalEstimatorPair p = gue_random_search(joint, Dims{2, 2}, cfg);
        CHECK(p.cost == doctest::Approx(unassisted_cost(joint, Dims{2, 2})).epsilon(1e-10));
    }
}

TEST_CASE("gue_random_search: determinism, bounds, and convergence in restarts") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    const MomentOperators joint = moments_joint(f, {0.0, 0.0});
    CoopConfig cfg;
    cfg.restarts = 32;
    cfg.seed = 99;
    const LocalEstimatorPair a = gue_random_search(joint, Dims{2, 2}, cfg);
    const LocalEstimatorPair b = gue_random_search(joint, Dims{2, 2}, cfg);
    CHECK(a.cost == b.cost);
    CHECK((a.sB - b.sB).frobenius_norm() == 0.0);
    CHECK((a.sF - b.sF).frobenius_norm() == 0.0);

    // the identity candidate caps the cost at the unassisted value; more
    // draws only improve it. The one-shot search explores a 3-dimensional
    // direction sphere (the (1a) solution is scale-invariant in sF), so it
    // approaches the true minimum slowly; 2048 draws land within ~1e-2.
    const double unassisted = unassisted_cost(joint, Dims{2, 2});
    CHECK(a.cost <= unassisted + 1e-12);
    CoopConfig big = cfg;
    big.restarts = 2048;
    const double c2048 = gue_random_search(joint, Dims{2, 2}, big).cost;
    CHECK(c2048 <= a.cost + 1e-12);
    CHECK(c2048 <= closedform::coop_min_at_zero() + 1e-2);

    // never beats the exact-alternating optimum
    const LocalEstimatorPair ea =
        exact_alternating_solve(joint, Dims{2, 2}, cfg, ComplexMatrix::identity(2));
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        CoopConfig c2 = cfg;
        c2.seed = seed;
        CHECK(gue_random_search(joint, Dims{2, 2}, c2).cost >= ea.cost - 1e-8);
    }
}

TEST_CASE("exact_alternating_solve: descent, anchors, monotone iterates") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    const MomentOperators joint = moments_joint(f, {0.0, 0.0});
    CoopConfig cfg;
    const LocalEstimatorPair p =
        exact_alternating_solve(joint, Dims{2, 2}, cfg, ComplexMatrix::identity(2));
    CHECK(p.cost == doctest::Approx(closedform::coop_min_at_zero()).epsilon(1e-9));

    // constant family: variance reached at the first iterate
    Rng rng(64);
    const MomentOperators cm =
        const_product_moments(random_density(rng, 2), random_density(rng, 2));
    CoopConfig one;
    one.max_iterations = 1;
    const LocalEstimatorPair pc =
        exact_alternating_solve(cm, Dims{2, 2}, one, ComplexMatrix::identity(2));
    CHECK(pc.cost == doctest::Approx(cm.m2 - cm.mean * cm.mean).epsilon(1e-9));

    // cost after k iterations is nonincreasing in k (random core instances)
    for (int rep = 0; rep < 6; ++rep) {
        const double sx = 0.4 + rng.next_unit();
        const double sy = rng.next_unit() * std::min(sx, kPi / 2.0);
        const CoreUnitaryTarget t{Component::s_z, sx, sy};
        if (admissible_interval(t).empty()) continue;
        const IsometryFamily fam = core_family_uniform(t);
        const ProbeState probe{rng.next_unit(), 2.0 * kPi * rng.next_unit()};
        const MomentOperators jm = moments_joint(fam, probe);
        const ComplexMatrix init = gue_sample(rng, 2);
        double prev = std::numeric_limits<double>::infinity();
        for (int iters = 1; iters <= 8; ++iters) {
            CoopConfig ck;
            ck.max_iterations = iters;
            const LocalEstimatorPair pk = exact_alternating_solve(jm, Dims{2, 2}, ck, init);
            CHECK(pk.cost <= prev + 1e-10);
            prev = pk.cost;
        }
    }
}

TEST_CASE("cooperative_min: anchors, baseline guarantee, reports") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    CoopConfig cfg;
    cfg.seed = 7;

    const LocalEstimatorPair p0 = cooperative_min(f, {0.0, 0.0}, cfg);
    CHECK(p0.cost == doctest::Approx(closedform::coop_min_at_zero()).epsilon(1e-9));
    CHECK(std::isfinite(p0.report.cost_fixed_point));
    CHECK(std::isfinite(p0.report.cost_exact_alternating));
    CHECK(std::isfinite(p0.report.cost_random_search));

    // kron(sB, sF) hermitian; reported cost equals cost_of(kron)
    const MomentOperators joint = moments_joint(f, {0.35, 1.1});
    const LocalEstimatorPair p = cooperative_min(joint, Dims{2, 2}, cfg);
    const ComplexMatrix s = kron(p.sB, p.sF);
    CHECK(check_hermitian(s).is_hermitian);
    CHECK(p.cost == doctest::Approx(cost_of(s, joint)).epsilon(1e-10));
    CHECK(p.cost <= unassisted_cost(joint, Dims{2, 2}) + 1e-10);

    // gauge: ||sF||_F = sqrt(dF), trace nonnegative
    CHECK(p.sF.frobenius_norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(p.sF.trace().real() >= -1e-12);
}

TEST_CASE("cooperative_min: core family never beats the unassisted baseline bound") {
    Rng rng(65);
    CoopConfig cfg;
    cfg.restarts = 8;
    for (int rep = 0; rep < 10; ++rep) {
        const double sx = 0.3 + rng.next_unit() * (kPi / 2.0 - 0.3);
        const double sy = rng.next_unit() * sx;
        const Component comp = static_cast<Component>(rep % 3);
        CoreUnitaryTarget t;
        if (comp == Component::s_x)
            t = {comp, sy, sy * rng.next_unit()};
        else if (comp == Component::s_y)
            t = {comp, sx, sx * rng.next_unit() * 0.8};
        else
            t = {comp, sx, sy};
        if (admissible_interval(t).empty()) continue;
        const IsometryFamily fam = core_family_uniform(t);
        const ProbeState probe{rng.next_unit(), 2.0 * kPi * rng.next_unit()};
        const MomentOperators joint = moments_joint(fam, probe);
        cfg.seed = 1000 + rep;
        const LocalEstimatorPair p = cooperative_min(joint, Dims{2, 2}, cfg);
        CHECK(p.cost <= unassisted_cost(joint, Dims{2, 2}) + 1e-10);
        CHECK(p.cost >= -1e-10);
    }
}

TEST_CASE("cooperative_min: product moments decouple to the single-system solution") {
    Rng rng(66);
    const ComplexMatrix a = random_density(rng, 2);
    const ComplexMatrix b = random_density(rng, 2);
    const MomentOperators joint = const_product_moments(a, b);
    CoopConfig cfg;
    cfg.seed = 3;
    const LocalEstimatorPair p = cooperative_min(joint, Dims{2, 2}, cfg);

    // single-system solution on the B marginal
    MomentOperators mB{partial_trace(joint.w0, 2, 2, Keep::B),
                       partial_trace(joint.w1, 2, 2, Keep::B), joint.m2, joint.mean};
    const EstimatorSolution sB = personik_solve(mB);
    CHECK(p.cost == doctest::Approx(sB.cost).epsilon(1e-9));
    // kron equality up to the product's scalar gauge: compare sB (x) I with
    // the de-gauged pair by cost only plus the kron product shape
    const ComplexMatrix k = kron(p.sB, p.sF);
    CHECK(cost_of(k, joint) == doctest::Approx(cost_of(kron(sB.estimator,
                                                            ComplexMatrix::identity(2)),
                                                       joint))
                                   .epsilon(1e-9));
}

TEST_CASE("cooperative_min: gauge invariance under init rescaling") {
    const IsometryFamily f = phase_damp_family(pd_prior());
    const MomentOperators joint = moments_joint(f, {0.25, 0.9});
    CoopConfig cfg;
    cfg.seed = 5;
    ComplexMatrix init = ComplexMatrix::identity(2);
    const LocalEstimatorPair p1 = exact_alternating_solve(joint, Dims{2, 2}, cfg, init);
    init *= 37.0;
    const LocalEstimatorPair p2 = exact_alternating_solve(joint, Dims{2, 2}, cfg, init);
    CHECK(p1.cost == doctest::Approx(p2.cost).epsilon(1e-10));
    CHECK((kron(p1.sB, p1.sF) - kron(p2.sB, p2.sF)).frobenius_norm() <= 1e-8);
}

TEST_CASE("delta: basics and the phase damping endpoints") {
    CHECK(delta(0.3, 0.3) == 0.0);
    CHECK_THROWS_AS(delta(-1.0, 0.0), std::invalid_argument);

    const IsometryFamily f = phase_damp_family(pd_prior());
    CoopConfig cfg;
    cfg.seed = 8;
    const double cb0 = kPi * kPi / 48.0;
    const double d0 = delta(cb0, cooperative_min(f, {0.0, 0.0}, cfg).cost);
    CHECK(d0 == doctest::Approx(cb0 - closedform::coop_min_at_zero()).epsilon(1e-8));
    CHECK(d0 == doctest::Approx(0.10132).epsilon(1e-4));

    const double cb1 = personik_solve(moments_B(f, {1.0, 0.0})).cost;
    const double d1 = delta(cb1, cooperative_min(f, {1.0, 0.0}, cfg).cost);
    CHECK(std::abs(d1) <= 1e-9);
}
