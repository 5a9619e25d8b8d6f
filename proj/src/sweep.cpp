#include "qest/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "qest/rng.hpp"

namespace qest {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// run tasks 0..count-1 on up to `threads` workers; any task exception is
// rethrown after join
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    n = std::min<int>(n, static_cast<int>(count ? count : 1));
    if (n == 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) {
        pool.emplace_back([&]() {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct GridPoint {
    double axis1, axis2;
};

std::vector<GridPoint> triangular_grid(int n) {
    std::vector<GridPoint> pts;
    pts.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    const double step = (kPi / 2.0) / (n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) pts.push_back({i * step, j * step});
    return pts;
}

CoreUnitaryTarget make_target(Component estimated, double axis1, double axis2) {
    // axes: s_x -> (s_y, s_z); s_y -> (s_x, s_z); s_z -> (s_x, s_y)
    return CoreUnitaryTarget{estimated, axis1, axis2};
}

struct ProbeEval {
    double cB = kNan;
    double second = kNan;
};

// golden-section minimization with a fixed iteration count (deterministic)
double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters,
                  double* arg_out) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int k = 0; k < iters; ++k) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    if (fc < fd) {
        if (arg_out) *arg_out = c;
        return fc;
    }
    if (arg_out) *arg_out = d;
    return fd;
}

} // namespace

std::vector<double> SweepSpec::gamma_grid_or_default() const {
    if (!probe_gamma_grid.empty()) return probe_gamma_grid;
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(i * 0.1);
    return g;
}

std::vector<double> SweepSpec::phi_grid_or_default() const {
    if (!probe_phi_grid.empty()) return probe_phi_grid;
    std::vector<double> p;
    for (int i = 0; i < 16; ++i) p.push_back(i * kPi / 8.0);
    return p;
}

namespace {

SweepRow sweep_core_point(const SweepSpec& spec, const GridPoint& pt, std::uint64_t point_seed) {
    SweepRow row;
    row.axis1 = pt.axis1;
    row.axis2 = pt.axis2;

    const CoreUnitaryTarget target = make_target(spec.estimated, pt.axis1, pt.axis2);
    const Interval adm = admissible_interval(target);
    if (adm.empty()) {
        row.skip = true;
        row.best_gamma = row.best_phi = row.cB_min = row.second = row.value = kNan;
        return row;
    }
    const IsometryFamily fam = core_entangling_family(
        target, Prior::uniform(adm.lower, adm.upper, spec.quadrature_nodes));

    const std::vector<double> gammas = spec.gamma_grid_or_default();
    // phi has no leverage for the s_z target beyond shifting the window
    const bool collapse_phi = spec.estimated == Component::s_z;
    const std::vector<double> phis =
        collapse_phi ? std::vector<double>{0.0} : spec.phi_grid_or_default();

    const Dims dims{fam.dB, fam.dF};

    auto eval_cB = [&](double g, double ph) {
        return personik_solve(moments_B(fam, {g, ph}), spec.tol).cost;
    };
    auto eval_cF = [&](double g, double ph) {
        return personik_solve(moments_F(fam, {g, ph}), spec.tol).cost;
    };
    std::uint64_t coop_counter = 0;
    auto eval_cBF = [&](double g, double ph) {
        CoopConfig cfg;
        cfg.tolerance = spec.tol;
        cfg.restarts = spec.coop_restarts;
        cfg.seed = Rng::mix(point_seed, ++coop_counter);
        return cooperative_min(moments_joint(fam, {g, ph}), dims, cfg).cost;
    };

    if (spec.quantity == Quantity::privacy) {
        double best = -std::numeric_limits<double>::infinity();
        for (double g : gammas) {
            for (double ph : phis) {
                const double cB = eval_cB(g, ph);
                const double cF = eval_cF(g, ph);
                if (cF - cB > best) {
                    best = cF - cB;
                    row.best_gamma = g;
                    row.best_phi = ph;
                    row.cB_min = cB;
                    row.second = cF;
                }
            }
        }
        row.value = std::max(best, 0.0);
        return row;
    }

    // delta: independent minimization of both terms over the probe
    auto probe_min = [&](const std::function<double(double, double)>& f, double* arg_g,
                         double* arg_ph) {
        double best = std::numeric_limits<double>::infinity();
        for (double g : gammas) {
            double local_best;
            double local_arg = 0.0;
            if (phis.size() == 1) {
                local_best = f(g, phis[0]);
                local_arg = phis[0];
            } else {
                std::size_t k_best = 0;
                double grid_best = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < phis.size(); ++k) {
                    const double v = f(g, phis[k]);
                    if (v < grid_best) {
                        grid_best = v;
                        k_best = k;
                    }
                }
                if (spec.refine_probe) {
                    const double step = phis.size() > 1 ? phis[1] - phis[0] : kPi / 8.0;
                    local_best = golden_min([&](double ph) { return f(g, ph); },
                                            phis[k_best] - step, phis[k_best] + step, 40,
                                            &local_arg);
                    if (grid_best < local_best) {
                        local_best = grid_best;
                        local_arg = phis[k_best];
                    }
                } else {
                    local_best = grid_best;
                    local_arg = phis[k_best];
                }
            }
            if (local_best < best) {
                best = local_best;
                if (arg_g) *arg_g = g;
                if (arg_ph) *arg_ph = local_arg;
            }
        }
        return best;
    };

    row.cB_min = probe_min(eval_cB, nullptr, nullptr);
    row.second = probe_min(eval_cBF, &row.best_gamma, &row.best_phi);
    row.value = row.cB_min - row.second;
    return row;
}

SweepRow sweep_pdamp_point(const SweepSpec& spec, double gamma, double phi,
                           std::uint64_t point_seed) {
    SweepRow row;
    row.axis1 = gamma;
    row.axis2 = phi;
    row.best_gamma = gamma;
    row.best_phi = phi;
    const IsometryFamily fam =
        phase_damp_family(Prior::uniform(0.0, kPi / 2.0, spec.quadrature_nodes));
    row.cB_min = personik_solve(moments_B(fam, {gamma, phi}), spec.tol).cost;
    if (spec.quantity == Quantity::privacy) {
        row.second = personik_solve(moments_F(fam, {gamma, phi}), spec.tol).cost;
        row.value = std::max(row.second - row.cB_min, 0.0);
    } else {
        CoopConfig cfg;
        cfg.tolerance = spec.tol;
        cfg.restarts = spec.coop_restarts;
        cfg.seed = point_seed;
        row.second = cooperative_min(fam, {gamma, phi}, cfg).cost;
        row.value = row.cB_min - row.second;
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.grid_points_per_axis < 2)
        throw std::invalid_argument("run_sweep: grid_points_per_axis >= 2");

    if (spec.family == FamilyKind::pdamp) {
        const std::vector<double> gammas = spec.gamma_grid_or_default();
        const std::vector<double> phis = spec.phi_grid_or_default();
        std::vector<SweepRow> rows(gammas.size() * phis.size());
        parallel_for(rows.size(), spec.parallelism, [&](std::size_t i) {
            const double g = gammas[i / phis.size()];
            const double ph = phis[i % phis.size()];
            rows[i] = sweep_pdamp_point(spec, g, ph, Rng::mix(spec.seed, i));
        });
        return rows;
    }

    const std::vector<GridPoint> pts = triangular_grid(spec.grid_points_per_axis);
    std::vector<SweepRow> rows(pts.size());
    parallel_for(rows.size(), spec.parallelism, [&](std::size_t i) {
        rows[i] = sweep_core_point(spec, pts[i], Rng::mix(spec.seed, i));
    });
    return rows;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows) {
    const char* second_name = spec.quantity == Quantity::privacy ? "cF_min" : "cBF_min";
    const char* axes = nullptr;
    if (spec.family == FamilyKind::pdamp) {
        axes = "gamma,phi";
    } else {
        switch (spec.estimated) {
            case Component::s_x: axes = "s_y,s_z"; break;
            case Component::s_y: axes = "s_x,s_z"; break;
            case Component::s_z: axes = "s_x,s_y"; break;
        }
    }
    os << axes << ",best_gamma,best_phi,cB_min," << second_name << ",value,skip_flag\n";
    for (const SweepRow& r : rows) {
        os << format_g17(r.axis1) << ',' << format_g17(r.axis2) << ','
           << format_g17(r.best_gamma) << ',' << format_g17(r.best_phi) << ','
           << format_g17(r.cB_min) << ',' << format_g17(r.second) << ','
           << format_g17(r.value) << ',' << (r.skip ? 1 : 0) << '\n';
    }
}

std::vector<CurveRow> run_curve(const CurveSpec& spec) {
    std::vector<double> gammas = spec.gamma_grid;
    if (gammas.empty())
        for (int i = 0; i <= 10; ++i) gammas.push_back(i * 0.1);
    for (double g : gammas)
        if (g < 0.0 || g > 1.0) throw std::invalid_argument("run_curve: gamma outside [0,1]");

    std::vector<CurveRow> rows(gammas.size());
    parallel_for(rows.size(), spec.parallelism, [&](std::size_t i) {
        const double g = gammas[i];
        const IsometryFamily fam =
            phase_damp_family(Prior::uniform(0.0, kPi / 2.0, spec.quadrature_nodes));
        CurveRow row;
        row.gamma = g;
        row.cB_min = personik_solve(moments_B(fam, {g, 0.0}), spec.tol).cost;
        row.cF_min = personik_solve(moments_F(fam, {g, 0.0}), spec.tol).cost;
        CoopConfig cfg;
        cfg.tolerance = spec.tol;
        cfg.restarts = spec.coop_restarts;
        cfg.seed = Rng::mix(spec.seed, i);
        row.cBF_min = cooperative_min(fam, {g, 0.0}, cfg).cost;
        rows[i] = row;
    });
    return rows;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
    os << "gamma,cB_min,cF_min,cBF_min\n";
    for (const CurveRow& r : rows)
        os << format_g17(r.gamma) << ',' << format_g17(r.cB_min) << ','
           << format_g17(r.cF_min) << ',' << format_g17(r.cBF_min) << '\n';
}

} // namespace qest
