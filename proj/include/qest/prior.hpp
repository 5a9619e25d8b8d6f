#pragma once

#include <functional>
#include <vector>

#include "qest/matrix.hpp"

namespace qest {

/// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const Quadrature& gauss_legendre(int n);

/// Prior density for the estimated parameter on [lower, upper] (radians).
/// weight need not be pre-normalized per se, but the invariant
/// (integral == 1 to 1e-10) is checked by validate().
struct Prior {
    double lower = 0.0;
    double upper = 0.0;
    std::function<double(double)> weight;
    int quadrature_nodes = 64;

    static Prior uniform(double lower, double upper, int nodes = 64);

    double width() const { return upper - lower; }
    /// throws when lower >= upper or the density is negative/unnormalized
    void validate() const;
};

/// integral of f over the prior interval with the prior's node count
double integrate(const Prior& prior, const std::function<double(double)>& f);

} // namespace qest
