#include "qest/family.hpp"

#include <cmath>
#include <stdexcept>

namespace qest {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
} // namespace

ComplexMatrix probe_density(const ProbeState& p) {
    if (p.gamma < 0.0 || p.gamma > 1.0)
        throw std::invalid_argument("probe_density: gamma outside [0,1]");
    const double g = std::sqrt(p.gamma * (1.0 - p.gamma));
    ComplexMatrix rho(2);
    rho(0, 0) = p.gamma;
    rho(0, 1) = g * std::exp(cplx(0.0, -p.phi));
    rho(1, 0) = g * std::exp(cplx(0.0, p.phi));
    rho(1, 1) = 1.0 - p.gamma;
    return rho;
}

Interval admissible_interval(const CoreUnitaryTarget& t) {
    switch (t.estimated) {
        case Component::s_x: return {t.fixed_a, kHalfPi};       // s_x in [s_y, pi/2]
        case Component::s_y: return {t.fixed_b, t.fixed_a};     // s_y in [s_z, s_x]
        case Component::s_z: return {0.0, t.fixed_b};           // s_z in [0, s_y]
    }
    throw std::logic_error("admissible_interval: bad component");
}

IsometryFamily phase_damp_family(const Prior& prior) {
    if (prior.lower < -1e-12 || prior.upper > kHalfPi + 1e-12)
        throw std::invalid_argument("phase_damp_family: prior interval outside [0, pi/2]");
    IsometryFamily f;
    f.dA = 2;
    f.dB = 2;
    f.dF = 2;
    f.prior = prior;
    f.label = "pdamp";
    f.v_of_s = [](double s) {
        // V|0> = |0>|0>, V|1> = cos s |1>|0> - sin s |1>|1>
        ComplexMatrix v(4, 2);
        v(0, 0) = 1.0;
        v(2, 1) = std::cos(s);
        v(3, 1) = -std::sin(s);
        return v;
    };
    return f;
}

ComplexMatrix core_unitary(double sx, double sy, double sz) {
    // block form on span{|00>,|11>} and span{|01>,|10>}
    ComplexMatrix u(4);
    const cplx em = std::exp(cplx(0.0, -0.5 * sz));
    const cplx ep = std::exp(cplx(0.0, 0.5 * sz));
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

IsometryFamily core_entangling_family(const CoreUnitaryTarget& target, const Prior& prior) {
    auto in_range = [](double v) { return v >= -1e-12 && v <= kHalfPi + 1e-12; };
    if (!in_range(target.fixed_a) || !in_range(target.fixed_b))
        throw std::invalid_argument("core_entangling_family: fixed values outside [0, pi/2]");
    // the fixed components must respect the tetrahedron ordering themselves
    if (target.estimated != Component::s_y && target.fixed_a < target.fixed_b - 1e-12)
        throw std::invalid_argument("core_entangling_family: fixed values violate the ordering");
    const Interval adm = admissible_interval(target);
    if (adm.empty())
        throw std::invalid_argument("core_entangling_family: empty admissible interval");
    if (std::abs(prior.lower - adm.lower) > 1e-9 || std::abs(prior.upper - adm.upper) > 1e-9)
        throw std::invalid_argument(
            "core_entangling_family: prior interval must equal the admissible range");

    IsometryFamily f;
    f.dA = 2;
    f.dB = 2;
    f.dF = 2;
    f.prior = prior;
    f.label = "core";
    const Component est = target.estimated;
    const double fa = target.fixed_a, fb = target.fixed_b;
    f.v_of_s = [est, fa, fb](double s) {
        double sx, sy, sz;
        switch (est) {
            case Component::s_x: sx = s;  sy = fa; sz = fb; break;
            case Component::s_y: sx = fa; sy = s;  sz = fb; break;
            default:             sx = fa; sy = fb; sz = s;  break;
        }
        const ComplexMatrix u = core_unitary(sx, sy, sz);
        // V = U (. (x) |0>_E): keep columns for |0>|0> and |1>|0>
        ComplexMatrix v(4, 2);
        for (std::size_t r = 0; r < 4; ++r) {
            v(r, 0) = u(r, 0);
            v(r, 1) = u(r, 2);
        }
        return v;
    };
    return f;
}

IsometryFamily core_family_uniform(const CoreUnitaryTarget& target, int nodes) {
    const Interval adm = admissible_interval(target);
    if (adm.empty())
        throw std::invalid_argument("core_family_uniform: empty admissible interval");
    return core_entangling_family(target, Prior::uniform(adm.lower, adm.upper, nodes));
}

ComplexMatrix joint_output(const IsometryFamily& f, const ComplexMatrix& rho_a, double s) {
    if (s < f.prior.lower - 1e-12 || s > f.prior.upper + 1e-12)
        throw std::invalid_argument("joint_output: s outside the prior interval");
    if (rho_a.rows() != f.dA || rho_a.cols() != f.dA)
        throw std::invalid_argument("joint_output: probe dimension mismatch");
    const ComplexMatrix v = f.v_of_s(s);
    return v * rho_a * v.adjoint();
}

ComplexMatrix joint_output(const IsometryFamily& f, const ProbeState& probe, double s) {
    return joint_output(f, probe_density(probe), s);
}

ComplexMatrix output_B(const IsometryFamily& f, const ProbeState& probe, double s) {
    return partial_trace(joint_output(f, probe, s), f.dB, f.dF, Keep::B);
}

ComplexMatrix output_F(const IsometryFamily& f, const ProbeState& probe, double s) {
    return partial_trace(joint_output(f, probe, s), f.dB, f.dF, Keep::F);
}

double check_isometry(const IsometryFamily& f, int samples) {
    if (samples < 1) throw std::invalid_argument("check_isometry: samples >= 1");
    const ComplexMatrix eye = ComplexMatrix::identity(f.dA);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.5 : static_cast<double>(i) / (samples - 1);
        const double s = f.prior.lower + t * (f.prior.upper - f.prior.lower);
        const ComplexMatrix v = f.v_of_s(s);
        worst = std::max(worst, (v.adjoint() * v - eye).frobenius_norm());
    }
    return worst;
}

} // namespace qest
