#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qest/cooperative.hpp"
#include "qest/family.hpp"

namespace qest {

enum class FamilyKind { pdamp, core };
enum class Quantity { privacy, delta };

struct SweepSpec {
    FamilyKind family = FamilyKind::core;
    Component estimated = Component::s_x;
    int grid_points_per_axis = 25; // triangular region: n(n+1)/2 rows
    std::vector<double> probe_gamma_grid; // empty -> 0, 0.1, ..., 1
    std::vector<double> probe_phi_grid;   // empty -> 0, pi/8, ..., 15 pi/8
    Quantity quantity = Quantity::privacy;
    std::string output_path;
    std::uint64_t seed = 0;
    int parallelism = 0; // 0 -> hardware concurrency
    int quadrature_nodes = 64;
    double tol = 1e-10;
    int coop_restarts = 8;
    // Delta sweeps refine the probe-phase minimization beyond the grid
    // (deterministic golden-section around the grid argmin); the continuum
    // minimum is a function of s_z + phi only, which the bare grid aliases.
    bool refine_probe = true;

    std::vector<double> gamma_grid_or_default() const;
    std::vector<double> phi_grid_or_default() const;
};

struct SweepRow {
    double axis1 = 0.0, axis2 = 0.0;
    double best_gamma = 0.0, best_phi = 0.0;
    double cB_min = 0.0;
    double second = 0.0; // cF_min (privacy) or cBF_min (delta)
    double value = 0.0;  // P'_e or Delta'
    bool skip = false;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);
void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows);

struct CurveSpec {
    std::vector<double> gamma_grid; // empty -> 0, 0.1, ..., 1
    std::uint64_t seed = 0;
    int quadrature_nodes = 64;
    double tol = 1e-10;
    int coop_restarts = 32;
    int parallelism = 0;
};

struct CurveRow {
    double gamma = 0.0, cB_min = 0.0, cF_min = 0.0, cBF_min = 0.0;
};

std::vector<CurveRow> run_curve(const CurveSpec& spec);
void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows);

/// lossless double formatting used in every CSV (17 significant digits)
std::string format_g17(double v);

} // namespace qest
