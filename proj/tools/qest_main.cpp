#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qest/closedform.hpp"
#include "qest/cooperative.hpp"
#include "qest/sweep.hpp"
#include "qest/validate.hpp"

namespace {

using nlohmann::json;
using namespace qest;

constexpr double kPi = 3.14159265358979323846;

struct CommonOpts {
    std::uint64_t seed = 0;
    int nodes = 64;
    double tol = 1e-10;
    int parallelism = 0;
    std::string output;
    bool as_json = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--nodes", c.nodes, "quadrature nodes")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", c.tol, "solver tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--parallelism", c.parallelism, "worker threads (0 = auto)");
    cmd->add_option("--output,-o", c.output, "output path (default: stdout)");
    cmd->add_flag("--json", c.as_json, "machine-readable output");
}

std::ostream& open_output(const CommonOpts& c, std::ofstream& file) {
    if (c.output.empty()) return std::cout;
    file.open(c.output, std::ios::binary); // binary: LF endings everywhere
    if (!file) throw std::runtime_error("cannot open output file: " + c.output);
    return file;
}

json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"real", re}, {"imag", im}};
}

int run_validate(const CommonOpts& c) {
    const std::vector<CheckResult> checks = run_validation({c.nodes, c.tol});
    bool all = true;
    for (const CheckResult& r : checks) all = all && r.pass;

    std::ofstream file;
    std::ostream& os = open_output(c, file);
    if (c.as_json) {
        json out;
        out["checks"] = json::array();
        for (const CheckResult& r : checks)
            out["checks"].push_back({{"name", r.name},
                                     {"pass", r.pass},
                                     {"residual", r.residual},
                                     {"tolerance", r.tolerance}});
        out["all_pass"] = all;
        os << out.dump(2) << "\n";
    } else {
        for (const CheckResult& r : checks) {
            char line[160];
            std::snprintf(line, sizeof(line), "%-34s %s   residual %.3e (tol %.1e)",
                          r.name.c_str(), r.pass ? "PASS" : "FAIL", r.residual, r.tolerance);
            os << line << "\n";
        }
        os << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    }
    return all ? 0 : 1;
}

int run_curve_cmd(const CommonOpts& c, const std::vector<double>& gammas, int restarts) {
    CurveSpec spec;
    spec.gamma_grid = gammas;
    spec.seed = c.seed;
    spec.quadrature_nodes = c.nodes;
    spec.tol = c.tol;
    spec.parallelism = c.parallelism;
    spec.coop_restarts = restarts;
    const std::vector<CurveRow> rows = run_curve(spec);
    std::ofstream file;
    std::ostream& os = open_output(c, file);
    write_curve_csv(os, rows);
    return 0;
}

int run_sweep_cmd(const CommonOpts& c, SweepSpec spec) {
    spec.seed = c.seed;
    spec.quadrature_nodes = c.nodes;
    spec.tol = c.tol;
    spec.parallelism = c.parallelism;
    spec.output_path = c.output;
    const std::vector<SweepRow> rows = run_sweep(spec);
    std::ofstream file;
    std::ostream& os = open_output(c, file);
    write_sweep_csv(os, spec, rows);
    return 0;
}

int run_estimate(const CommonOpts& c, const std::string& family, const std::string& estimated,
                 std::optional<double> sx, std::optional<double> sy, std::optional<double> sz,
                 double gamma, double phi, const std::string& mode, int restarts) {
    IsometryFamily fam;
    if (family == "pdamp") {
        fam = phase_damp_family(Prior::uniform(0.0, kPi / 2.0, c.nodes));
    } else if (family == "core") {
        CoreUnitaryTarget t;
        auto need = [](const std::optional<double>& v, const char* name) {
            if (!v) throw CLI::ValidationError(std::string("estimate: missing --") + name);
            return *v;
        };
        if (estimated == "s_x") {
            t = {Component::s_x, need(sy, "sy"), need(sz, "sz")};
        } else if (estimated == "s_y") {
            t = {Component::s_y, need(sx, "sx"), need(sz, "sz")};
        } else if (estimated == "s_z") {
            t = {Component::s_z, need(sx, "sx"), need(sy, "sy")};
        } else {
            throw CLI::ValidationError("estimate: --estimated must be s_x, s_y or s_z");
        }
        fam = core_family_uniform(t, c.nodes);
    } else {
        throw CLI::ValidationError("estimate: --family must be pdamp or core");
    }

    const ProbeState probe{gamma, phi};
    json out;
    out["family"] = family;
    out["prior"] = {{"lower", fam.prior.lower}, {"upper", fam.prior.upper}};
    out["gamma"] = gamma;
    out["phi"] = phi;
    out["mode"] = mode;

    auto spectral_json = [](const ComplexMatrix& est) {
        json arr = json::array();
        for (const MeasurementOutcome& mo : spectral_measurement(est))
            arr.push_back({{"outcome", mo.outcome}, {"projector", matrix_to_json(mo.projector)}});
        return arr;
    };

    if (mode == "B" || mode == "F") {
        const MomentOperators m =
            mode == "B" ? moments_B(fam, probe) : moments_F(fam, probe);
        const EstimatorSolution sol = personik_solve(m, c.tol);
        out["estimator"] = matrix_to_json(sol.estimator);
        out["cost"] = sol.cost;
        out["residual"] = sol.residual;
        out["degenerate"] = sol.degenerate;
        out["spectral_measurement"] = spectral_json(sol.estimator);
    } else if (mode == "coop") {
        CoopConfig cfg;
        cfg.tolerance = c.tol;
        cfg.seed = c.seed;
        cfg.restarts = restarts;
        const LocalEstimatorPair p = cooperative_min(fam, probe, cfg);
        out["estimator_B"] = matrix_to_json(p.sB);
        out["estimator_F"] = matrix_to_json(p.sF);
        out["cost"] = p.cost;
        out["residual_1a"] = p.report.residual_1a;
        out["residual_1b"] = p.report.residual_1b;
        out["converged"] = p.report.converged;
        out["method"] = to_string(p.report.method);
        out["method_costs"] = {{"fixed_point", p.report.cost_fixed_point},
                               {"exact_alternating", p.report.cost_exact_alternating},
                               {"random_search", p.report.cost_random_search}};
        out["method_costs_disagree"] = p.report.method_costs_disagree;
        out["skipped_candidates"] = p.report.skipped_candidates;
        out["spectral_measurement_B"] = spectral_json(p.sB);
        out["spectral_measurement_F"] = spectral_json(p.sF);
    } else {
        throw CLI::ValidationError("estimate: --mode must be B, F or coop");
    }

    std::ofstream file;
    std::ostream& os = open_output(c, file);
    os << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian estimation of isometry families through a channel and its complement"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command line overrides");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    CommonOpts vo, co, so, eo;

    CLI::App* validate = app.add_subcommand("validate", "run the oracle-agreement suite");
    add_common(validate, vo);

    CLI::App* curve = app.add_subcommand("curve", "phase damping cost curves vs probe gamma");
    add_common(curve, co);
    std::vector<double> curve_gammas;
    int curve_restarts = 32;
    curve->add_option("--gamma-grid", curve_gammas, "probe gamma values (default 0,0.1,...,1)");
    curve->add_option("--restarts", curve_restarts, "cooperative solver restarts");

    CLI::App* sweep = app.add_subcommand("sweep", "parameter-space sweeps as CSV");
    add_common(sweep, so);
    SweepSpec sw;
    std::string sw_family = "core", sw_estimated = "s_x", sw_quantity = "privacy";
    int sw_grid = 25, sw_restarts = 8;
    bool sw_no_refine = false;
    std::vector<double> sw_gammas, sw_phis;
    sweep->add_option("--family", sw_family, "pdamp | core");
    sweep->add_option("--estimated", sw_estimated, "s_x | s_y | s_z (core family)");
    sweep->add_option("--quantity", sw_quantity, "privacy | delta");
    sweep->add_option("--grid-points", sw_grid, "points per axis (triangular region)");
    sweep->add_option("--probe-gamma-grid", sw_gammas, "probe gamma grid");
    sweep->add_option("--probe-phi-grid", sw_phis, "probe phi grid");
    sweep->add_option("--restarts", sw_restarts, "cooperative solver restarts");
    sweep->add_flag("--no-refine", sw_no_refine, "disable probe-phase refinement (delta)");

    CLI::App* estimate = app.add_subcommand("estimate", "single-point estimation as JSON");
    add_common(estimate, eo);
    std::string est_family = "pdamp", est_estimated = "s_x", est_mode = "B";
    std::optional<double> est_sx, est_sy, est_sz;
    double est_gamma = 0.5, est_phi = 0.0;
    int est_restarts = 32;
    estimate->add_option("--family", est_family, "pdamp | core");
    estimate->add_option("--estimated", est_estimated, "s_x | s_y | s_z (core family)");
    estimate->add_option("--sx", est_sx, "fixed s_x (radians)");
    estimate->add_option("--sy", est_sy, "fixed s_y (radians)");
    estimate->add_option("--sz", est_sz, "fixed s_z (radians)");
    estimate->add_option("--gamma", est_gamma, "probe weight in [0,1]");
    estimate->add_option("--phi", est_phi, "probe phase (radians)");
    estimate->add_option("--mode", est_mode, "B | F | coop");
    estimate->add_option("--restarts", est_restarts, "cooperative solver restarts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed()) return run_validate(vo);
        if (curve->parsed()) return run_curve_cmd(co, curve_gammas, curve_restarts);
        if (sweep->parsed()) {
            if (sw_family == "pdamp") {
                sw.family = FamilyKind::pdamp;
            } else if (sw_family == "core") {
                sw.family = FamilyKind::core;
            } else {
                std::cerr << "sweep: --family must be pdamp or core\n";
                return 2;
            }
            if (sw_estimated == "s_x") {
                sw.estimated = Component::s_x;
            } else if (sw_estimated == "s_y") {
                sw.estimated = Component::s_y;
            } else if (sw_estimated == "s_z") {
                sw.estimated = Component::s_z;
            } else {
                std::cerr << "sweep: --estimated must be s_x, s_y or s_z\n";
                return 2;
            }
            if (sw_quantity == "privacy") {
                sw.quantity = Quantity::privacy;
            } else if (sw_quantity == "delta") {
                sw.quantity = Quantity::delta;
            } else {
                std::cerr << "sweep: --quantity must be privacy or delta\n";
                return 2;
            }
            sw.grid_points_per_axis = sw_grid;
            sw.coop_restarts = sw_restarts;
            sw.refine_probe = !sw_no_refine;
            sw.probe_gamma_grid = sw_gammas;
            sw.probe_phi_grid = sw_phis;
            return run_sweep_cmd(so, sw);
        }
        if (estimate->parsed())
            return run_estimate(eo, est_family, est_estimated, est_sx, est_sy, est_sz,
                                est_gamma, est_phi, est_mode, est_restarts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
