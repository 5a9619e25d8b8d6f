#include "qest/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "qest/anticommutator.hpp"
#include "qest/eig.hpp"

namespace qest {

MomentOperators moments(const std::function<ComplexMatrix(double)>& rho_of_s,
                        const Prior& prior) {
    prior.validate();
    const Quadrature& q = gauss_legendre(prior.quadrature_nodes);
    const double half = 0.5 * (prior.upper - prior.lower);
    const double mid = 0.5 * (prior.upper + prior.lower);

    MomentOperators m;
    bool first = true;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double s = mid + half * q.nodes[i];
        const double w = half * q.weights[i] * prior.weight(s);
        const ComplexMatrix rho = rho_of_s(s);
        if (!rho.all_finite())
            throw std::invalid_argument("moments: state has non-finite entries");
        if (first) {
            m.w0 = ComplexMatrix(rho.rows(), rho.cols());
            m.w1 = ComplexMatrix(rho.rows(), rho.cols());
            first = false;
        }
        m.w0.add_scaled(w, rho);
        m.w1.add_scaled(w * s, rho);
        m.m2 += w * s * s;
        m.mean += w * s;
    }
    return m;
}

MomentOperators moments_B(const IsometryFamily& f, const ProbeState& probe) {
    return moments([&](double s) { return output_B(f, probe, s); }, f.prior);
}

MomentOperators moments_F(const IsometryFamily& f, const ProbeState& probe) {
    return moments([&](double s) { return output_F(f, probe, s); }, f.prior);
}

MomentOperators moments_joint(const IsometryFamily& f, const ProbeState& probe) {
    const ComplexMatrix rho_a = probe_density(probe);
    return moments([&](double s) { return joint_output(f, rho_a, s); }, f.prior);
}

EstimatorSolution personik_solve(const MomentOperators& m, double tol) {
    AnticommutatorSolution s = solve_anticommutator(m.w0, m.w1, tol);
    EstimatorSolution out;
    out.estimator = std::move(s.x);
    out.degenerate = s.degenerate;
    out.residual = s.residual;
    out.cost = cost_of(out.estimator, m);
    return out;
}

double cost_of(const ComplexMatrix& estimator, const MomentOperators& m) {
    if (estimator.rows() != m.w0.rows() || estimator.cols() != m.w0.cols())
        throw std::invalid_argument("cost_of: dimension mismatch");
    require_hermitian(estimator, 1e-10, "cost_of: estimator");
    const ComplexMatrix s2 = estimator * estimator;
    const double t0 = (m.w0 * s2).trace().real();
    const double t1 = (m.w1 * estimator).trace().real();
    return t0 - 2.0 * t1 + m.m2;
}

double cost_by_quadrature(const std::function<ComplexMatrix(double)>& rho_of_s,
                          const Prior& prior, const ComplexMatrix& estimator) {
    require_hermitian(estimator, 1e-10, "cost_by_quadrature: estimator");
    const std::size_t n = estimator.dim();
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    return integrate(prior, [&](double s) {
        ComplexMatrix d = estimator - s * eye;
        return prior.weight(s) * (rho_of_s(s) * d * d).trace().real();
    });
}

double privacy(double cB, double cF) {
    if (cB < 0.0 || cF < 0.0) throw std::invalid_argument("privacy: negative cost");
    return std::max(cF - cB, 0.0);
}

double weak_privacy(const IsometryFamily& f, const ProbeState& probe,
                    const std::vector<ProbeState>& averaging_grid) {
    if (averaging_grid.empty()) throw std::invalid_argument("weak_privacy: empty grid");
    const double cB = personik_solve(moments_B(f, probe)).cost;
    double acc = 0.0;
    for (const ProbeState& p : averaging_grid)
        acc += personik_solve(moments_F(f, p)).cost;
    return std::max(acc / static_cast<double>(averaging_grid.size()) - cB, 0.0);
}

std::vector<ProbeState> default_probe_grid() {
    constexpr double kPi = 3.14159265358979323846;
    std::vector<ProbeState> grid;
    for (int gi = 0; gi <= 10; ++gi)
        for (int pi_ = 0; pi_ < 16; ++pi_)
            grid.push_back({gi * 0.1, pi_ * kPi / 8.0});
    return grid;
}

std::vector<ProbeState> haar_probe_grid(int gamma_nodes, int phi_nodes) {
    // Haar on pure qubit states: |<0|psi>|^2 uniform on [0,1], phase uniform
    constexpr double kPi = 3.14159265358979323846;
    const Quadrature& q = gauss_legendre(gamma_nodes);
    std::vector<ProbeState> grid;
    for (int gi = 0; gi < gamma_nodes; ++gi) {
        const double g = 0.5 + 0.5 * q.nodes[gi];
        for (int pi_ = 0; pi_ < phi_nodes; ++pi_)
            grid.push_back({g, 2.0 * kPi * pi_ / phi_nodes});
    }
    return grid;
}

std::vector<MeasurementOutcome> spectral_measurement(const ComplexMatrix& estimator,
                                                     double tol) {
    require_hermitian(estimator, 1e-10, "spectral_measurement");
    const EigenDecomposition ed = herm_eig(estimator);
    const std::size_t n = estimator.dim();
    double scale = 1.0;
    for (double l : ed.eigenvalues) scale = std::max(scale, std::abs(l));

    std::vector<MeasurementOutcome> out;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && std::abs(ed.eigenvalues[j] - ed.eigenvalues[i]) <= tol * scale) ++j;
        MeasurementOutcome mo;
        double sum = 0.0;
        mo.projector = ComplexMatrix(n);
        for (std::size_t k = i; k < j; ++k) {
            sum += ed.eigenvalues[k];
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    mo.projector(r, c) +=
                        ed.eigenvectors(r, k) * std::conj(ed.eigenvectors(c, k));
        }
        mo.outcome = sum / static_cast<double>(j - i);
        out.push_back(std::move(mo));
        i = j;
    }
    return out;
}

} // namespace qest
