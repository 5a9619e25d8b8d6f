#pragma once

#include "qest/matrix.hpp"

namespace qest::reference {

// Independent closed-form expressions for the two-qubit entangling family:
// entrywise formulas for U(s), the joint output, and both reduced outputs.
// Kept separate from the construction path (matrix exponential blocks,
// Kronecker embedding, partial traces) so the two can be checked against
// each other.

/// 4x4 unitary, basis {|0>|0>, |0>|1>, |1>|0>, |1>|1>}
ComplexMatrix u_closed(double sx, double sy, double sz);

/// joint output for the probe (gamma, phi)
ComplexMatrix rho_joint_closed(double sx, double sy, double sz, double gamma, double phi);

/// reduced output on the main system
ComplexMatrix rho_b_closed(double sx, double sy, double sz, double gamma, double phi);

/// reduced output on the environment side
ComplexMatrix rho_f_closed(double sx, double sy, double sz, double gamma, double phi);

} // namespace qest::reference
