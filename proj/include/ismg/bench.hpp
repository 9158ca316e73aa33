/// @file bench.hpp
/// Benchmark setups (shear cavity, lid cavity, jet, channel of jets) and the
/// run/sweep harness that averages per-step cost metrics into table rows.

#pragma once

#include <atomic>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cycles.hpp"
#include "io.hpp"
#include "projection.hpp"

namespace ismg {

struct BenchmarkCase {
    std::string name;
    GridSpec grid;
    double nu = 0.1;
    double dt = 1.0;
    long steps = 1000;
    long window = 1000;       // trailing steps averaged into sweep rows
    double steady_tol = 0.0;  // > 0: stop once max per-step velocity change drops below
    double t_max = 0.0;       // > 0: stop once t reaches this
    unsigned long seed = 0;   // > 0: tiny random initial velocity perturbation
};

/// Square cavity with tangentially moving walls arranged counter-clockwise
/// (bottom +v0, right +v0, top -v0) except the left wall, whose velocity is
/// reversed (+v0 instead of -v0).
inline BenchmarkCase setup_shear_cavity(int n = 500, double v0 = 0.1) {
    BenchmarkCase c;
    c.name = "shear_cavity";
    c.grid.nx = c.grid.ny = n;
    c.grid.h = 1.0;
    c.grid.side(Side::west) = BoundaryCondition::moving_wall(0.0, v0);
    c.grid.side(Side::east) = BoundaryCondition::moving_wall(0.0, v0);
    c.grid.side(Side::south) = BoundaryCondition::moving_wall(v0, 0.0);
    c.grid.side(Side::north) = BoundaryCondition::moving_wall(-v0, 0.0);
    c.nu = 0.1;
    c.dt = 1.0;
    c.steps = 1000;
    c.window = 1000;
    return c;
}

/// Classic lid-driven cavity: top lid u = U, other walls no-slip; viscosity
/// from the Reynolds number; runs to steady state (velocity change per step
/// below steady_tol) or to t_max.
inline BenchmarkCase setup_lid_cavity(int n = 256, double re = 1000.0, double u_lid = 0.1) {
    BenchmarkCase c;
    c.name = "lid_cavity";
    c.grid.nx = c.grid.ny = n;
    c.grid.h = 1.0;
    c.grid.side(Side::north) = BoundaryCondition::moving_wall(u_lid, 0.0);
    c.nu = u_lid * n * c.grid.h / re;
    c.dt = 1.0;
    c.steps = 40000;
    c.t_max = 40000.0;
    c.steady_tol = 1e-10;
    c.window = 1;
    return c;
}

/// Jet in a tall cavity: no-slip side and bottom walls, a centered inlet span
/// on the bottom, symmetry-with-fixed-pressure outflow on top.
inline BenchmarkCase setup_jet(int nx = 250, int ny = 500, double v0 = 0.1,
                               int inlet_width = 16) {
    BenchmarkCase c;
    c.name = "jet";
    c.grid.nx = nx;
    c.grid.ny = ny;
    c.grid.h = 1.0;
    c.grid.side(Side::south) =
        BoundaryCondition::inflow(v0, nx / 2 - inlet_width / 2, inlet_width);
    c.grid.side(Side::north) = BoundaryCondition::symmetry(0.0);
    c.nu = 0.01;
    c.dt = 1.0;
    c.steps = 2000;
    c.window = 2000;
    return c;
}

/// One period of a spanwise-periodic channel fed by a bottom jet (wider inlet
/// than the single-jet case), fixed-pressure outflow on top.
inline BenchmarkCase setup_channel_jets(int nx = 200, int ny = 400, double v0 = 0.1,
                                        int inlet_width = 25) {
    BenchmarkCase c;
    c.name = "channel_jets";
    c.grid.nx = nx;
    c.grid.ny = ny;
    c.grid.h = 1.0;
    c.grid.side(Side::west) = BoundaryCondition::wrap();
    c.grid.side(Side::east) = BoundaryCondition::wrap();
    c.grid.side(Side::south) =
        BoundaryCondition::inflow(v0, (nx - inlet_width) / 2, inlet_width);
    c.grid.side(Side::north) = BoundaryCondition::symmetry(0.0);
    c.nu = 0.01;
    c.dt = 1.0;
    c.steps = 1000;
    c.window = 1000;
    return c;
}

template <typename T>
struct CaseResult {
    RunMetrics metrics{1};
    FluidState<T> state;
    bool all_converged = true;
    long steps_run = 0;

    explicit CaseResult(const GridSpec& g) : state(g) {}
};

template <typename T>
using StepHook = std::function<void(const FluidState<T>&, const ConvergenceReport&)>;

/// Drive one case with one solver configuration. The optional hook runs after
/// every completed step (snapshots, per-step assertions); exceptions it throws
/// abort the run and propagate.
template <typename T>
CaseResult<T> run_case(const BenchmarkCase& bc, const CycleConfig& cfg,
                       const StepHook<T>& hook = {}) {
    bc.grid.validate();
    PressureSolver<T> solver(bc.grid, cfg);
    CaseResult<T> out(bc.grid);
    out.state.dt = bc.dt;
    out.state.nu = bc.nu;
    out.metrics = RunMetrics(std::int64_t(bc.grid.nx) * bc.grid.ny);

    if (bc.seed != 0) {
        std::mt19937_64 rng(bc.seed);
        std::uniform_real_distribution<double> dist(-1e-6, 1e-6);
        for (int j = 0; j < bc.grid.ny; ++j)
            for (int i = 1; i < bc.grid.nx; ++i) out.state.vel.u(i, j) = T(dist(rng));
        for (int j = 1; j < bc.grid.ny; ++j)
            for (int i = 0; i < bc.grid.nx; ++i) out.state.vel.v(i, j) = T(dist(rng));
    }

    MacVelocity<T> prev(bc.grid.nx, bc.grid.ny);
    for (long s = 0; s < bc.steps; ++s) {
        if (bc.t_max > 0.0 && out.state.t >= bc.t_max) break;
        if (bc.steady_tol > 0.0) prev = out.state.vel;
        ConvergenceReport rep = step(out.state, bc.grid, solver, out.metrics);
        out.all_converged = out.all_converged && rep.converged;
        ++out.steps_run;
        if (hook) hook(out.state, rep);
        if (bc.steady_tol > 0.0 && double(out.state.vel.max_change(prev)) < bc.steady_tol)
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cavity centerline extrema (normalized by the lid speed).

struct CavityExtrema {
    double u_ext = 0.0;  // magnitude of the u minimum on the vertical centerline
    double v_min = 0.0;  // v extrema on the horizontal centerline
    double v_max = 0.0;
};

/// Vertex value of the parabola through (k-1,f0),(k,f1),(k+1,f2); falls back
/// to the raw sample at the array edge or for degenerate curvature.
inline double quadratic_refine(const std::vector<double>& f, size_t k) {
    if (k == 0 || k + 1 >= f.size()) return f[k];
    double f0 = f[k - 1], f1 = f[k], f2 = f[k + 1];
    double curv = f0 + f2 - 2.0 * f1;
    if (curv == 0.0) return f1;
    double d = f2 - f0;
    return f1 - d * d / (8.0 * curv);
}

template <typename T>
CavityExtrema cavity_extrema(const FluidState<T>& st, const GridSpec& g, double u_lid) {
    std::vector<double> u_line(g.ny), v_line(g.nx);
    for (int j = 0; j < g.ny; ++j) u_line[j] = double(st.vel.u(g.nx / 2, j));
    for (int i = 0; i < g.nx; ++i) v_line[i] = double(st.vel.v(i, g.ny / 2));
    size_t ju = 0, iv_min = 0, iv_max = 0;
    for (size_t k = 1; k < u_line.size(); ++k)
        if (u_line[k] < u_line[ju]) ju = k;
    for (size_t k = 1; k < v_line.size(); ++k) {
        if (v_line[k] < v_line[iv_min]) iv_min = k;
        if (v_line[k] > v_line[iv_max]) iv_max = k;
    }
    CavityExtrema e;
    e.u_ext = -quadratic_refine(u_line, ju) / u_lid;
    e.v_min = quadratic_refine(v_line, iv_min) / u_lid;
    e.v_max = quadratic_refine(v_line, iv_max) / u_lid;
    return e;
}

// ---------------------------------------------------------------------------
// Sweep harness.

struct SweepAxes {
    std::vector<Scheme> schemes;
    std::vector<int> tiles;        // two-level schemes
    std::vector<int> depths;       // summed hierarchy
    std::vector<double> tol_coarse;
    double tol_fine = 1e-6;
    long max_total_sweeps = 20000;
};

struct SweepRow {
    Scheme scheme = Scheme::plain_gs;
    int tile_or_depth = 0;    // 0 for the plain baseline
    double tol_coarse = 0.0;  // 0 for the plain baseline
    double ncc_f = 0.0, ncc_c = 0.0, ncc_t = 0.0, n_lap = 0.0;
    bool converged = true;
};

inline CycleConfig sweep_cell_config(const SweepAxes& axes, const SweepRow& cell) {
    CycleConfig cfg;
    cfg.scheme = cell.scheme;
    cfg.tol_fine = axes.tol_fine;
    cfg.max_total_sweeps = axes.max_total_sweeps;
    if (cell.scheme == Scheme::plain_gs) {
        cfg.tol_coarse = axes.tol_fine;  // unused; keep the invariant valid
    } else {
        cfg.tol_coarse = cell.tol_coarse;
        if (cell.scheme == Scheme::acm)
            cfg.depth = cell.tile_or_depth;
        else
            cfg.tile = cell.tile_or_depth;
    }
    return cfg;
}

/// Table axes expanded in deterministic order: schemes outer, tile/depth,
/// then tol_coarse. The plain baseline contributes a single cell.
inline std::vector<SweepRow> sweep_cells(const SweepAxes& axes) {
    std::vector<SweepRow> cells;
    for (Scheme s : axes.schemes) {
        if (s == Scheme::plain_gs) {
            SweepRow r;
            r.scheme = s;
            cells.push_back(r);
            continue;
        }
        const std::vector<int>& sizes = (s == Scheme::acm) ? axes.depths : axes.tiles;
        for (int sz : sizes)
            for (double tc : axes.tol_coarse) {
                SweepRow r;
                r.scheme = s;
                r.tile_or_depth = sz;
                r.tol_coarse = tc;
                cells.push_back(r);
            }
    }
    return cells;
}

/// Run every (scheme, tile/depth, tol_coarse) cell of the table for `steps`
/// increments and average the trailing window into one row per cell. Cells
/// are independent runs; `jobs` > 1 executes them on worker threads without
/// changing any result. A cell that fails to converge is recorded with
/// converged = false and the sweep continues. When `metrics_dir` is non-empty
/// each cell's per-step metrics CSV is written there.
template <typename T>
std::vector<SweepRow> run_sweep(const BenchmarkCase& bc, const SweepAxes& axes, int jobs = 1,
                                const std::string& metrics_dir = "") {
    std::vector<SweepRow> rows = sweep_cells(axes);
    if (rows.empty()) throw std::invalid_argument("sweep: empty axes");
    std::atomic<size_t> next{0};
    std::vector<std::string> errors(rows.size());

    auto worker = [&]() {
        for (size_t k = next.fetch_add(1); k < rows.size(); k = next.fetch_add(1)) {
            SweepRow& row = rows[k];
            try {
                CycleConfig cfg = sweep_cell_config(axes, row);
                CaseResult<T> res = run_case<T>(bc, cfg);
                size_t window = size_t(std::min<long>(bc.window, res.steps_run));
                RunMetrics::Means mean = res.metrics.window_means(window);
                row.ncc_f = mean.sync_fine;
                row.ncc_c = mean.sync_coarse;
                row.ncc_t = mean.sync_total;
                row.n_lap = mean.lap_equiv;
                row.converged = res.all_converged;
                if (!metrics_dir.empty()) {
                    char name[128];
                    std::snprintf(name, sizeof name, "%s/metrics_%s_%d_%g.csv",
                                  metrics_dir.c_str(), scheme_name(row.scheme),
                                  row.tile_or_depth, row.tol_coarse);
                    write_metrics_csv(res.metrics, std::string(name));
                }
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };

    int nthreads = std::max(1, std::min<int>(jobs, int(rows.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (size_t k = 0; k < rows.size(); ++k)
        if (!errors[k].empty())
            throw std::runtime_error("sweep cell " + std::to_string(k) + ": " + errors[k]);
    return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "scheme,tile_or_depth,tol_coarse,NCC_f,NCC_c,NCC_t,N_Lap,converged\n";
    char buf[64];
    for (const SweepRow& r : rows) {
        os << scheme_name(r.scheme) << ',' << r.tile_or_depth << ',';
        std::snprintf(buf, sizeof buf, "%g", r.tol_coarse);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.ncc_f);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.ncc_c);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.ncc_t);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.n_lap);
        os << buf << ',' << (r.converged ? "true" : "false") << '\n';
    }
}

}  // namespace ismg
