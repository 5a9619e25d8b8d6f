#pragma once

#include <functional>
#include <vector>

#include "qest/family.hpp"
#include "qest/matrix.hpp"
#include "qest/prior.hpp"

namespace qest {

/// Prior-weighted zeroth/first moments of a state family plus the scalar
/// moments of the prior itself.
struct MomentOperators {
    ComplexMatrix w0;  // integral p(s) rho(s) ds, unit trace PSD
    ComplexMatrix w1;  // integral s p(s) rho(s) ds, Hermitian
    double m2 = 0.0;   // integral s^2 p(s) ds
    double mean = 0.0; // integral s p(s) ds
};

struct EstimatorSolution {
    ComplexMatrix estimator;
    double cost = 0.0;
    double residual = 0.0;
    bool degenerate = false;
};

MomentOperators moments(const std::function<ComplexMatrix(double)>& rho_of_s,
                        const Prior& prior);

/// moments of the single-system outputs of a family
MomentOperators moments_B(const IsometryFamily& f, const ProbeState& probe);
MomentOperators moments_F(const IsometryFamily& f, const ProbeState& probe);
MomentOperators moments_joint(const IsometryFamily& f, const ProbeState& probe);

/// minimum-mean-square-error estimator from w0 S + S w0 = 2 w1
EstimatorSolution personik_solve(const MomentOperators& m, double tol = 1e-10);

/// Tr[w0 S^2] - 2 Tr[w1 S] + m2
double cost_of(const ComplexMatrix& estimator, const MomentOperators& m);

/// direct quadrature of integral p(s) Tr[rho(s)(S - s I)^2] ds (cross-check route)
double cost_by_quadrature(const std::function<ComplexMatrix(double)>& rho_of_s,
                          const Prior& prior, const ComplexMatrix& estimator);

/// max{cF - cB, 0}
double privacy(double cB, double cF);

/// max{ mean over the grid of CF_min(probe') - CB_min(probe), 0 }
double weak_privacy(const IsometryFamily& f, const ProbeState& probe,
                    const std::vector<ProbeState>& averaging_grid);

/// the paper-default probe grid (gamma step 0.1 x phi step pi/8, 2pi excluded)
std::vector<ProbeState> default_probe_grid();
/// Haar-uniform pure-state average grid (gamma by Gauss-Legendre, phi uniform)
std::vector<ProbeState> haar_probe_grid(int gamma_nodes = 32, int phi_nodes = 32);

struct MeasurementOutcome {
    double outcome = 0.0;
    ComplexMatrix projector;
};

/// spectral measurement of a Hermitian estimator: outcomes with projectors
/// (degenerate eigenvalues merged) summing to the identity
std::vector<MeasurementOutcome> spectral_measurement(const ComplexMatrix& estimator,
                                                     double tol = 1e-10);

} // namespace qest
