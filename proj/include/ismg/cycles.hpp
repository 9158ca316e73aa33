/// @file cycles.hpp
/// Pressure-solve drivers: plain red-black GS, the accommodative two-level
/// cycle (interpolated or re-discretized coarse operator), and the summed
/// additive-correction V-cycle. All convergence control uses the max norm of
/// the flux-form residual; every timestep starts from a zero initial iterate.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarsening.hpp"
#include "metrics.hpp"
#include "smoother.hpp"

namespace ismg {

struct CycleConfig {
    Scheme scheme = Scheme::ismg;
    int tile = 16;                  // two-level schemes: coarsening factor per axis
    int depth = 4;                  // summed hierarchy: total level count
    double tol_fine = 1e-6;         // fine-grid max-residual target
    double tol_coarse = 1e-5;       // coarse max-residual target (restricted units)
    long max_total_sweeps = 20000;  // sweep budget per solve, all levels combined
    int acm_pre_smooth = 0;
    int acm_post_smooth = 1;
    double stall_factor = 0.9;      // return-to-coarse trigger: r_new/r_old above this

    void validate() const {
        if (!(tol_fine > 0) || !(tol_coarse > 0))
            throw std::invalid_argument("cycle: tolerances must be positive");
        if (tol_coarse < tol_fine)
            throw std::invalid_argument("cycle: tol_coarse must be >= tol_fine");
        if (max_total_sweeps < 1)
            throw std::invalid_argument("cycle: max_total_sweeps must be positive");
        if (!(stall_factor > 0.0 && stall_factor < 1.0))
            throw std::invalid_argument("cycle: stall_factor must lie in (0,1)");
        if (acm_pre_smooth < 0 || acm_post_smooth < 0)
            throw std::invalid_argument("cycle: smoothing counts must be non-negative");
        if (depth < 2) throw std::invalid_argument("cycle: depth must be >= 2");
        if (tile < 2) throw std::invalid_argument("cycle: tile must be >= 2");
    }
};

struct ConvergenceReport {
    bool converged = true;
    long fine_sweeps = 0;    // this solve's I_f contribution
    long coarse_sweeps = 0;  // this solve's I_c contribution
    double residual = 0.0;   // final fine max-norm residual
};

/// Thrown by callers that abort on an unconverged solve (single-run policy);
/// sweep harnesses record the failure and continue instead.
struct NonConvergence : std::runtime_error {
    long iterations;
    double final_residual;
    NonConvergence(long it, double res)
        : std::runtime_error(make_message(it, res)), iterations(it), final_residual(res) {}

  private:
    static std::string make_message(long it, double res) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "pressure solve not converged after %ld sweeps (residual %.3e)",
                      it, res);
        return buf;
    }
};

template <typename T>
ConvergenceReport solve_plain_gs(const FineStage<T>& st, ScalarField<T>& x,
                                 const ScalarField<T>& b, const CycleConfig& cfg,
                                 RunMetrics& m) {
    ConvergenceReport rep;
    zero_ghosts(x);
    T r = fine_residual(st, x, b);
    anchor_mean(st, x);
    long total = 0;
    while (r > T(cfg.tol_fine)) {
        if (total >= cfg.max_total_sweeps) {
            rep.converged = false;
            break;
        }
        rbgs_sweep(st, x, b);
        m.record_sweep(LevelKind::fine, 5, st.cells());
        ++rep.fine_sweeps;
        ++total;
        r = fine_residual(st, x, b);
        anchor_mean(st, x);
    }
    rep.residual = double(r);
    return rep;
}

/// Accommodative two-level cycle: check fine convergence; restrict the fine
/// residual and solve the coarse correction system to tol_coarse (zero sweeps
/// when the restricted residual already passes); prolongate (bilinear) and
/// add; smooth on the fine grid until converged or the per-sweep reduction
/// ratio stalls above stall_factor, then revisit the coarse grid.
template <typename T>
ConvergenceReport solve_two_level(const FineStage<T>& st, const CoarseOperator<T>& op,
                                  ScalarField<T>& x, const ScalarField<T>& b,
                                  const CycleConfig& cfg, RunMetrics& m) {
    ConvergenceReport rep;
    zero_ghosts(x);
    ScalarField<T> res(st.nx, st.ny);
    ScalarField<T> cb(op.ncx, op.ncy);
    ScalarField<T> ce(op.ncx, op.ncy);
    long total = 0;
    T r = fine_residual(st, x, b, &res);
    anchor_mean(st, x);

    while (r > T(cfg.tol_fine)) {
        if (total >= cfg.max_total_sweeps) {
            rep.converged = false;
            break;
        }
        // Coarse correction: A_c e = restrict(r).
        restrict_sum(res, op.ax, op.ay, cb);
        m.record_restriction();
        ce.fill(T(0));
        T rc = coarse_residual(op, ce, cb);
        long coarse_visit = 0;
        while (rc > T(cfg.tol_coarse) && total < cfg.max_total_sweeps) {
            gs_sweep_lex(op, ce, cb);
            m.record_sweep(LevelKind::coarse, op.stencil_points(), op.cells());
            ++rep.coarse_sweeps;
            ++total;
            ++coarse_visit;
            rc = coarse_residual(op, ce, cb);
            anchor_mean(op, ce);
        }
        if (rc > T(cfg.tol_coarse)) {
            rep.converged = false;
            break;
        }
        if (coarse_visit > 0) {
            prolongate_bilinear(ce, op.ax, op.ay, x);
            m.record_prolongation();
            r = fine_residual(st, x, b, &res);
            anchor_mean(st, x);
            if (r <= T(cfg.tol_fine)) break;
        }
        // Fine relaxation until converged or stalled.
        T prev = r;
        while (total < cfg.max_total_sweeps) {
            rbgs_sweep(st, x, b);
            m.record_sweep(LevelKind::fine, 5, st.cells());
            ++rep.fine_sweeps;
            ++total;
            r = fine_residual(st, x, b, &res);
            anchor_mean(st, x);
            if (r <= T(cfg.tol_fine)) break;
            if (r > T(cfg.stall_factor) * prev) break;
            prev = r;
        }
        if (r > T(cfg.tol_fine) && total >= cfg.max_total_sweeps) {
            rep.converged = false;
            break;
        }
    }
    rep.residual = double(r);
    return rep;
}

/// Summed-hierarchy V-cycle: descend with zero (configurable) pre-smooths
/// restricting residuals level by level; iterate the coarsest system to
/// tol_coarse; ascend adding blockwise-constant corrections with one
/// (configurable) red-black post-smooth per level. Only coarsest-level sweeps
/// count as coarse iterations.
template <typename T>
ConvergenceReport v_cycle_acm(const FineStage<T>& st, const MgHierarchy<T>& hier,
                              ScalarField<T>& x, const ScalarField<T>& b,
                              const CycleConfig& cfg, RunMetrics& m) {
    if (hier.scheme != Scheme::acm || hier.levels.empty())
        throw std::invalid_argument("v_cycle_acm: expected a summed hierarchy");
    ConvergenceReport rep;
    zero_ghosts(x);
    const int L = int(hier.levels.size());  // coarse levels 1..L
    std::vector<ScalarField<T>> xs, bs, rs;
    xs.reserve(L);
    bs.reserve(L);
    rs.reserve(L);
    for (int k = 0; k < L; ++k) {
        const auto& op = hier.levels[k];
        xs.emplace_back(op.ncx, op.ncy);
        bs.emplace_back(op.ncx, op.ncy);
        rs.emplace_back(op.ncx, op.ncy);
    }
    ScalarField<T> rs0(st.nx, st.ny);

    long total = 0;
    T r = fine_residual(st, x, b, &rs0);
    anchor_mean(st, x);

    while (r > T(cfg.tol_fine)) {
        if (total >= cfg.max_total_sweeps) {
            rep.converged = false;
            break;
        }
        bool capped = false;
        // Descend.
        for (int k = 1; k <= L && !capped; ++k) {
            const auto& op = hier.levels[k - 1];
            const ScalarField<T>& res_above = (k == 1) ? rs0 : rs[k - 2];
            restrict_sum(res_above, op.ax, op.ay, bs[k - 1]);
            m.record_restriction();
            xs[k - 1].fill(T(0));
            if (k < L) {
                for (int s = 0; s < cfg.acm_pre_smooth; ++s) {
                    if (total >= cfg.max_total_sweeps) {
                        capped = true;
                        break;
                    }
                    rbgs_sweep(op, xs[k - 1], bs[k - 1]);
                    m.record_sweep(LevelKind::fine, 5, op.cells());
                    ++rep.fine_sweeps;
                    ++total;
                }
                coarse_residual(op, xs[k - 1], bs[k - 1], &rs[k - 1]);
            } else {
                T rc = coarse_residual(op, xs[k - 1], bs[k - 1]);
                while (rc > T(cfg.tol_coarse)) {
                    if (total >= cfg.max_total_sweeps) {
                        capped = true;
                        break;
                    }
                    gs_sweep_lex(op, xs[k - 1], bs[k - 1]);
                    m.record_sweep(LevelKind::coarse, 5, op.cells());
                    ++rep.coarse_sweeps;
                    ++total;
                    rc = coarse_residual(op, xs[k - 1], bs[k - 1]);
                    anchor_mean(op, xs[k - 1]);
                }
            }
        }
        if (capped) {
            rep.converged = false;
            break;
        }
        // Ascend.
        for (int k = L - 1; k >= 1 && !capped; --k) {
            const auto& op_below = hier.levels[k];  // tiling of level k into k+1
            prolongate_constant(xs[k], op_below.ax, op_below.ay, xs[k - 1]);
            m.record_prolongation();
            const auto& op = hier.levels[k - 1];
            for (int s = 0; s < cfg.acm_post_smooth; ++s) {
                if (total >= cfg.max_total_sweeps) {
                    capped = true;
                    break;
                }
                rbgs_sweep(op, xs[k - 1], bs[k - 1]);
                m.record_sweep(LevelKind::fine, 5, op.cells());
                ++rep.fine_sweeps;
                ++total;
            }
        }
        if (!capped) {
            prolongate_constant(xs[0], hier.levels[0].ax, hier.levels[0].ay, x);
            m.record_prolongation();
            for (int s = 0; s < cfg.acm_post_smooth; ++s) {
                if (total >= cfg.max_total_sweeps) {
                    capped = true;
                    break;
                }
                rbgs_sweep(st, x, b);
                m.record_sweep(LevelKind::fine, 5, st.cells());
                ++rep.fine_sweeps;
                ++total;
            }
        }
        r = fine_residual(st, x, b, &rs0);
        anchor_mean(st, x);
        if (capped && r > T(cfg.tol_fine)) {
            rep.converged = false;
            break;
        }
    }
    rep.residual = double(r);
    return rep;
}

/// Facade owning the fine stage and the (geometry-only, built-once) hierarchy
/// for one grid + scheme combination.
template <typename T>
class PressureSolver {
  public:
    PressureSolver(const GridSpec& grid, const CycleConfig& cfg) : g_(grid), cfg_(cfg) {
        cfg_.validate();
        if (cfg_.scheme == Scheme::ismg || cfg_.scheme == Scheme::gmg) g_.tile = cfg_.tile;
        g_.validate();
        stage_ = build_fine_stage<T>(g_);
        hier_.scheme = cfg_.scheme;
        switch (cfg_.scheme) {
            case Scheme::ismg:
                hier_.levels.push_back(build_ismg_operator<T>(g_));
                break;
            case Scheme::gmg:
                hier_.levels.push_back(build_gmg_operator<T>(g_));
                break;
            case Scheme::acm:
                hier_ = build_acm_hierarchy<T>(g_, cfg_.depth);
                break;
            case Scheme::plain_gs:
                break;
        }
    }

    ConvergenceReport solve(ScalarField<T>& x, const ScalarField<T>& b, RunMetrics& m) const {
        switch (cfg_.scheme) {
            case Scheme::plain_gs:
                return solve_plain_gs(stage_, x, b, cfg_, m);
            case Scheme::ismg:
            case Scheme::gmg:
                return solve_two_level(stage_, hier_.levels.front(), x, b, cfg_, m);
            case Scheme::acm:
                return v_cycle_acm(stage_, hier_, x, b, cfg_, m);
        }
        throw std::logic_error("pressure solver: unknown scheme");
    }

    const GridSpec& grid() const { return g_; }
    const CycleConfig& config() const { return cfg_; }
    const FineStage<T>& stage() const { return stage_; }
    const MgHierarchy<T>& hierarchy() const { return hier_; }

  private:
    GridSpec g_;
    CycleConfig cfg_;
    FineStage<T> stage_;
    MgHierarchy<T> hier_;
};

}  // namespace ismg
