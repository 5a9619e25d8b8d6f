#include "qest/cooperative.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qest/anticommutator.hpp"
#include "qest/rng.hpp"

namespace qest {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Subproblem solutions larger than this (relative to the pair's natural
// scale) mean the linear system was effectively singular; such candidates
// are discarded rather than fed into cost evaluation, where cancellation
// would make the result meaningless.
constexpr double kNormCap = 1e6;

struct Workspace {
    const MomentOperators& m;
    Dims dims;
    ComplexMatrix w1B, w1F, eyeB, eyeF;
    double scale; // natural magnitude of estimator entries

    explicit Workspace(const MomentOperators& joint, const Dims& d)
        : m(joint),
          dims(d),
          w1B(partial_trace(joint.w1, d.dB, d.dF, Keep::B)),
          w1F(partial_trace(joint.w1, d.dB, d.dF, Keep::F)),
          eyeB(ComplexMatrix::identity(d.dB)),
          eyeF(ComplexMatrix::identity(d.dF)),
          scale(1.0 + std::abs(joint.mean) + std::sqrt(std::max(joint.m2, 0.0))) {}

    ComplexMatrix tilde_B(const ComplexMatrix& sF) const {
        return partial_trace(m.w0 * kron(eyeB, sF), dims.dB, dims.dF, Keep::B);
    }
    ComplexMatrix tilde_F(const ComplexMatrix& sB) const {
        return partial_trace(m.w0 * kron(sB, eyeF), dims.dB, dims.dF, Keep::F);
    }

    double pair_cost(const ComplexMatrix& sB, const ComplexMatrix& sF) const {
        return cost_of(kron(sB, sF), m);
    }

    double res_1a(const ComplexMatrix& sB, const ComplexMatrix& sF) const {
        return (anticommutator(tilde_B(sF), sB) - 2.0 * w1B).frobenius_norm();
    }
    double res_1b(const ComplexMatrix& sB, const ComplexMatrix& sF) const {
        return (anticommutator(tilde_F(sB), sF) - 2.0 * w1F).frobenius_norm();
    }

    bool sane(const ComplexMatrix& x) const {
        return x.all_finite() && x.frobenius_norm() <= kNormCap * scale;
    }
};

void hermitize(ComplexMatrix& a) {
    ComplexMatrix ad = a.adjoint();
    a += ad;
    a *= 0.5;
}

// kappa-type scalar freedom: ||sF||_F = sqrt(dF), Tr(sF) >= 0
void gauge_fix(ComplexMatrix& sB, ComplexMatrix& sF) {
    const double nf = sF.frobenius_norm();
    if (nf < 1e-300) return;
    double c = std::sqrt(static_cast<double>(sF.dim())) / nf;
    if (sF.trace().real() < 0.0) c = -c;
    sF *= c;
    sB *= 1.0 / c;
}

void finalize(LocalEstimatorPair& p, const Workspace& ws) {
    hermitize(p.sB);
    hermitize(p.sF);
    gauge_fix(p.sB, p.sF);
    p.cost = ws.pair_cost(p.sB, p.sF);
    p.report.residual_1a = ws.res_1a(p.sB, p.sF);
    p.report.residual_1b = ws.res_1b(p.sB, p.sF);
}

} // namespace

const char* to_string(CoopMethod m) {
    switch (m) {
        case CoopMethod::fixed_point: return "fixed_point";
        case CoopMethod::exact_alternating: return "exact_alternating";
        case CoopMethod::random_search: return "random_search";
    }
    return "?";
}

std::pair<ComplexMatrix, ComplexMatrix> tilde_moments(const ComplexMatrix& w0,
                                                      const ComplexMatrix& sB,
                                                      const ComplexMatrix& sF,
                                                      const Dims& dims) {
    if (w0.rows() != dims.dB * dims.dF || !w0.square())
        throw std::invalid_argument("tilde_moments: dimension mismatch");
    if (sB.rows() != dims.dB || sF.rows() != dims.dF)
        throw std::invalid_argument("tilde_moments: dimension mismatch");
    ComplexMatrix wtB =
        partial_trace(w0 * kron(ComplexMatrix::identity(dims.dB), sF), dims.dB, dims.dF, Keep::B);
    ComplexMatrix wtF =
        partial_trace(w0 * kron(sB, ComplexMatrix::identity(dims.dF)), dims.dB, dims.dF, Keep::F);
    hermitize(wtB);
    hermitize(wtF);
    return {std::move(wtB), std::move(wtF)};
}

LocalEstimatorPair fixed_point_solve(const MomentOperators& joint, const Dims& dims,
                                     const CoopConfig& cfg, const ComplexMatrix& init_sF) {
    require_hermitian(init_sF, 1e-10, "fixed_point_solve: init_sF");
    Workspace ws(joint, dims);

    LocalEstimatorPair out;
    out.report.method = CoopMethod::fixed_point;
    out.report.seed = cfg.seed;

    ComplexMatrix sF = init_sF;
    ComplexMatrix sB = ws.eyeB;
    bool ok = true;
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        ComplexMatrix wtB = ws.tilde_B(sF);
        hermitize(wtB);
        AnticommutatorSolution sa = solve_anticommutator(wtB, ws.w1B, cfg.tolerance);
        sB = std::move(sa.x);
        if (!ws.sane(sB)) {
            ok = false;
            break;
        }
        ComplexMatrix wtF = ws.tilde_F(sB);
        hermitize(wtF);
        AnticommutatorSolution sb = solve_anticommutator(wtF, ws.w1F, cfg.tolerance);
        sF = std::move(sb.x);
        if (!ws.sane(sF)) {
            ok = false;
            break;
        }
        if (ws.res_1a(sB, sF) <= cfg.tolerance && ws.res_1b(sB, sF) <= cfg.tolerance) {
            ++it;
            break;
        }
    }
    out.sB = std::move(sB);
    out.sF = std::move(sF);
    out.report.iterations = it;
    if (!ok) {
        out.report.converged = false;
        out.report.skipped_candidates = 1;
        out.sB = ws.eyeB;
        out.sF = ws.eyeF;
    }
    finalize(out, ws);
    out.report.converged =
        ok && out.report.residual_1a <= cfg.tolerance && out.report.residual_1b <= cfg.tolerance;
    return out;
}

LocalEstimatorPair exact_alternating_solve(const MomentOperators& joint, const Dims& dims,
                                           const CoopConfig& cfg, const ComplexMatrix& init_sF) {
    require_hermitian(init_sF, 1e-10, "exact_alternating_solve: init_sF");
    if (init_sF.frobenius_norm() < 1e-300)
        throw std::invalid_argument("exact_alternating_solve: init_sF must be nonzero");
    Workspace ws(joint, dims);

    LocalEstimatorPair out;
    out.report.method = CoopMethod::exact_alternating;
    out.report.seed = cfg.seed;

    ComplexMatrix sF = init_sF;
    ComplexMatrix sB = ws.eyeB;
    double prev = std::numeric_limits<double>::infinity();
    int it = 0;
    bool converged = false;
    for (; it < cfg.max_iterations; ++it) {
        // exact minimizer over sB for fixed sF
        ComplexMatrix mB =
            partial_trace(ws.m.w0 * kron(ws.eyeB, sF * sF), dims.dB, dims.dF, Keep::B);
        ComplexMatrix nB = partial_trace(ws.m.w1 * kron(ws.eyeB, sF), dims.dB, dims.dF, Keep::B);
        hermitize(mB);
        hermitize(nB);
        sB = solve_anticommutator(mB, nB, cfg.tolerance).x;
        // exact minimizer over sF for fixed sB
        ComplexMatrix mF =
            partial_trace(ws.m.w0 * kron(sB * sB, ws.eyeF), dims.dB, dims.dF, Keep::F);
        ComplexMatrix nF = partial_trace(ws.m.w1 * kron(sB, ws.eyeF), dims.dB, dims.dF, Keep::F);
        hermitize(mF);
        hermitize(nF);
        sF = solve_anticommutator(mF, nF, cfg.tolerance).x;

        const double c = ws.pair_cost(sB, sF);
        if (prev - c <= cfg.tolerance * std::max(1.0, std::abs(prev))) {
            prev = std::min(prev, c);
            converged = true;
            ++it;
            break;
        }
        prev = c;
    }
    out.sB = std::move(sB);
    out.sF = std::move(sF);
    out.report.iterations = it;
    finalize(out, ws);
    out.report.converged = converged;
    return out;
}

LocalEstimatorPair gue_random_search(const MomentOperators& joint, const Dims& dims,
                                     const CoopConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("gue_random_search: restarts >= 1");
    Workspace ws(joint, dims);
    Rng rng(cfg.seed);

    LocalEstimatorPair best;
    best.cost = std::numeric_limits<double>::infinity();
    best.report.method = CoopMethod::random_search;
    best.report.seed = cfg.seed;
    int skipped = 0;
    int used = 0;

    for (int k = 0; k < cfg.restarts; ++k) {
        // candidate 0 is the identity: the unassisted baseline is always present
        ComplexMatrix sF = (k == 0) ? ws.eyeF : gue_sample(rng, dims.dF);
        ++used;
        ComplexMatrix wtB = ws.tilde_B(sF);
        hermitize(wtB);
        ComplexMatrix sB;
        try {
            sB = solve_anticommutator(wtB, ws.w1B, cfg.tolerance).x;
        } catch (const inconsistent_anticommutator&) {
            ++skipped;
            continue;
        }
        if (!ws.sane(sB)) {
            ++skipped;
            continue;
        }
        const double c = ws.pair_cost(sB, sF);
        if (std::isfinite(c) && c < best.cost) {
            best.sB = std::move(sB);
            best.sF = std::move(sF);
            best.cost = c;
        }
    }
    best.report.restarts_used = used;
    best.report.skipped_candidates = skipped;
    best.report.iterations = used;
    finalize(best, ws);
    best.report.converged = true;
    return best;
}

LocalEstimatorPair cooperative_min(const MomentOperators& joint, const Dims& dims,
                                   const CoopConfig& cfg) {
    if (!(cfg.use_fixed_point || cfg.use_exact_alternating || cfg.use_random_search))
        throw std::invalid_argument("cooperative_min: no method enabled");
    if (cfg.tolerance <= 0.0 || cfg.restarts < 1 || cfg.max_iterations < 1)
        throw std::invalid_argument("cooperative_min: bad config");
    Workspace ws(joint, dims);

    // unassisted baseline sF = I: guarantees cost <= single-system C_B
    LocalEstimatorPair best;
    best.cost = std::numeric_limits<double>::infinity();
    bool have_any = false;
    try {
        AnticommutatorSolution un =
            solve_anticommutator(partial_trace(joint.w0, dims.dB, dims.dF, Keep::B), ws.w1B,
                                 cfg.tolerance);
        best.sB = std::move(un.x);
        best.sF = ws.eyeF;
        best.report.method = CoopMethod::random_search;
        best.report.seed = cfg.seed;
        finalize(best, ws);
        have_any = true;
    } catch (const inconsistent_anticommutator&) {
    }

    SolverReport summary = best.report;
    summary.cost_fixed_point = kNan;
    summary.cost_exact_alternating = kNan;
    summary.cost_random_search = kNan;

    Rng rng(Rng::mix(cfg.seed, 0x5eedc00bULL));
    std::vector<ComplexMatrix> inits;
    inits.push_back(ws.eyeF);
    const int extra_inits = std::max(1, cfg.restarts / 8);
    for (int i = 0; i < extra_inits; ++i) inits.push_back(gue_sample(rng, dims.dF));

    auto consider = [&](const LocalEstimatorPair& cand, double& method_best) {
        if (!std::isfinite(cand.cost)) return;
        // costs are exact quadratics; anything below -tol is cancellation noise
        if (cand.cost < -1e-9) return;
        have_any = true;
        if (std::isnan(method_best) || cand.cost < method_best) method_best = cand.cost;
        if (cand.cost < best.cost) {
            const SolverReport keep = summary;
            best = cand;
            summary = cand.report;
            summary.cost_fixed_point = keep.cost_fixed_point;
            summary.cost_exact_alternating = keep.cost_exact_alternating;
            summary.cost_random_search = keep.cost_random_search;
        }
    };

    for (const ComplexMatrix& init : inits) {
        if (cfg.use_fixed_point) {
            try {
                consider(fixed_point_solve(joint, dims, cfg, init), summary.cost_fixed_point);
            } catch (const inconsistent_anticommutator&) {
                ++summary.skipped_candidates;
            }
        }
        if (cfg.use_exact_alternating) {
            try {
                consider(exact_alternating_solve(joint, dims, cfg, init),
                         summary.cost_exact_alternating);
            } catch (const inconsistent_anticommutator&) {
                ++summary.skipped_candidates;
            }
        }
    }
    if (cfg.use_random_search)
        consider(gue_random_search(joint, dims, cfg), summary.cost_random_search);

    if (!have_any)
        throw std::runtime_error("cooperative_min: every method failed on this instance");

    const double cfp = summary.cost_fixed_point;
    const double cea = summary.cost_exact_alternating;
    summary.method_costs_disagree =
        std::isfinite(cfp) && std::isfinite(cea) && std::abs(cfp - cea) > 1e-6;
    best.report = summary;
    return best;
}

LocalEstimatorPair cooperative_min(const IsometryFamily& f, const ProbeState& probe,
                                   const CoopConfig& cfg) {
    return cooperative_min(moments_joint(f, probe), Dims{f.dB, f.dF}, cfg);
}

double delta(double cB_min, double cBF_min) {
    if (cB_min < 0.0 || cBF_min < 0.0) throw std::invalid_argument("delta: negative cost");
    return cB_min - cBF_min;
}

} // namespace qest
