#pragma once

#include <functional>
#include <string>

#include "qest/matrix.hpp"
#include "qest/prior.hpp"

namespace qest {

/// Pure qubit probe (sqrt(gamma)|0> + e^{i phi} sqrt(1-gamma)|1>).
struct ProbeState {
    double gamma = 0.5;
    double phi = 0.0;
};

/// rank-1 density matrix of the probe
ComplexMatrix probe_density(const ProbeState& p);

/// One-parameter family of isometries V_s : A -> B (x) F, with a prior on
/// the parameter. v_of_s returns a (dB*dF) x dA matrix.
struct IsometryFamily {
    std::size_t dA = 0, dB = 0, dF = 0;
    Prior prior;
    std::function<ComplexMatrix(double)> v_of_s;
    std::string label;
};

enum class Component { s_x, s_y, s_z };

/// Which component of the two-qubit entangling family is estimated; the
/// other two are held at fixed values (given in (x,y,z) order with the
/// estimated one skipped).
struct CoreUnitaryTarget {
    Component estimated = Component::s_x;
    double fixed_a = 0.0; // s_y when estimating s_x, s_x otherwise
    double fixed_b = 0.0; // s_z when estimating s_x or s_y, s_y otherwise
};

/// Admissible range of the estimated component under the ordering
/// pi/2 >= s_x >= s_y >= s_z >= 0. May be empty (lower == upper).
struct Interval {
    double lower = 0.0, upper = 0.0;
    bool empty(double eps = 1e-12) const { return upper - lower <= eps; }
};
Interval admissible_interval(const CoreUnitaryTarget& target);

/// Controlled-rotation dilation of the phase damping channel:
/// U_s = |0><0| (x) I + |1><1| (x) (cos s I + i sin s sigma_y), V_s = U_s|0>_E.
IsometryFamily phase_damp_family(const Prior& prior);

/// Two-qubit entangling family exp[-(i/2)(s_x XX + s_y YY + s_z ZZ)] with
/// the estimated component running over the prior interval.
IsometryFamily core_entangling_family(const CoreUnitaryTarget& target, const Prior& prior);

/// convenience: core family with the uniform prior on the admissible range
IsometryFamily core_family_uniform(const CoreUnitaryTarget& target, int nodes = 64);

/// 4x4 unitary of the core family at a full parameter point
ComplexMatrix core_unitary(double sx, double sy, double sz);

ComplexMatrix joint_output(const IsometryFamily& f, const ProbeState& probe, double s);
ComplexMatrix joint_output(const IsometryFamily& f, const ComplexMatrix& rho_a, double s);
ComplexMatrix output_B(const IsometryFamily& f, const ProbeState& probe, double s);
ComplexMatrix output_F(const IsometryFamily& f, const ProbeState& probe, double s);

/// max over uniformly sampled s of ||V_s^dag V_s - I||_F
double check_isometry(const IsometryFamily& f, int samples);

} // namespace qest
