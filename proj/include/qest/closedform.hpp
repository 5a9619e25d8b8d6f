#pragma once

#include "qest/matrix.hpp"

namespace qest::closedform {

// Analytic minimum costs, privacy and optimal estimators for the phase
// damping dilation with the uniform prior on [0, pi/2]; the oracle layer the
// numerical pipeline is validated against.

/// minimum B-side cost: pi^2/48 - gamma(1-gamma)(pi-4)^2/(pi^2-4)
double cb_min(double gamma);

/// minimum F-side cost (monotone nondecreasing in gamma)
double cf_min(double gamma);

/// privacy of estimation, max{cf_min - cb_min, 0}, in closed form
double pe(double gamma);

/// root of pe: privacy is positive exactly on (gamma0, 1)
double gamma0();

/// argmax of pe
double gamma_star();

/// cooperative minimum at gamma = 0: (pi^4 - 48)/(48 pi^2)
double coop_min_at_zero();

/// optimal B-side estimator at probe weight gamma (2x2, real symmetric)
ComplexMatrix sb_opt(double gamma);

} // namespace qest::closedform
