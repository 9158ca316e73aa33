/// @file metrics.hpp
/// Synchronization and arithmetic-cost accounting.
///
/// Cost model: a red-black sweep needs 2 global synchronizations (one per
/// color), a serial/block coarse sweep needs 1. N_Lap measures arithmetic in
/// fine-grid five-point Laplacian equivalents: one sweep over `cells` cells
/// with an s-point stencil adds (cells / fine_cells) * (s / 5).

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace ismg {

enum class LevelKind { fine, coarse };

struct StepMetrics {
    long step = 0;
    std::int64_t fine_sweeps = 0;    // I_f
    std::int64_t coarse_sweeps = 0;  // I_c
    std::int64_t sync_fine = 0;      // NCC_f
    std::int64_t sync_coarse = 0;    // NCC_c
    double lap_equiv = 0.0;          // N_Lap
    std::int64_t restrictions = 0;
    std::int64_t prolongations = 0;
    double residual_final = 0.0;
    bool converged = true;

    std::int64_t sync_total() const { return sync_fine + sync_coarse; }  // NCC_t
};

/// Accumulates per-sweep costs and closes them into per-timestep rows.
/// Counter totals depend only on the sweep sequence, never on threading.
struct RunMetrics {
    std::int64_t fine_cells = 1;
    StepMetrics current;
    std::vector<StepMetrics> rows;

    explicit RunMetrics(std::int64_t fine_cells_total = 1) : fine_cells(fine_cells_total) {}

    void record_sweep(LevelKind kind, int stencil_points, std::int64_t cells) {
        if (kind == LevelKind::fine) {
            current.fine_sweeps += 1;
            current.sync_fine += 2;
        } else {
            current.coarse_sweeps += 1;
            current.sync_coarse += 1;
        }
        current.lap_equiv +=
            (double(cells) / double(fine_cells)) * (double(stencil_points) / 5.0);
    }
    void record_restriction() { current.restrictions += 1; }
    void record_prolongation() { current.prolongations += 1; }

    /// Seal the running counters into a per-timestep row and reset them.
    void close_timestep(long step, double residual_final, bool converged) {
        current.step = step;
        current.residual_final = residual_final;
        current.converged = converged;
        rows.push_back(current);
        current = StepMetrics{};
    }

    struct Means {
        double fine_sweeps = 0, coarse_sweeps = 0;
        double sync_fine = 0, sync_coarse = 0, sync_total = 0;
        double lap_equiv = 0;
        bool all_converged = true;
    };

    /// Per-step means over the trailing `window` rows (window <= rows.size()).
    Means window_means(size_t window) const {
        Means m;
        if (rows.empty() || window == 0) return m;
        if (window > rows.size()) window = rows.size();
        size_t begin = rows.size() - window;
        for (size_t k = begin; k < rows.size(); ++k) {
            const StepMetrics& r = rows[k];
            m.fine_sweeps += double(r.fine_sweeps);
            m.coarse_sweeps += double(r.coarse_sweeps);
            m.sync_fine += double(r.sync_fine);
            m.sync_coarse += double(r.sync_coarse);
            m.lap_equiv += r.lap_equiv;
            m.all_converged = m.all_converged && r.converged;
        }
        double inv = 1.0 / double(window);
        m.fine_sweeps *= inv;
        m.coarse_sweeps *= inv;
        m.sync_fine *= inv;
        m.sync_coarse *= inv;
        m.lap_equiv *= inv;
        m.sync_total = m.sync_fine + m.sync_coarse;
        return m;
    }
};

inline void write_metrics_csv(const RunMetrics& m, std::ostream& os) {
    os << "step,I_f,I_c,NCC_f,NCC_c,NCC_t,N_Lap,restrictions,prolongations,residual_final\n";
    char buf[64];
    for (const StepMetrics& r : m.rows) {
        os << r.step << ',' << r.fine_sweeps << ',' << r.coarse_sweeps << ',' << r.sync_fine
           << ',' << r.sync_coarse << ',' << r.sync_total() << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.lap_equiv);
        os << buf << ',' << r.restrictions << ',' << r.prolongations << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.residual_final);
        os << buf << '\n';
    }
}

inline bool write_metrics_csv(const RunMetrics& m, const std::string& path) {
    std::ofstream os(path);
    if (!os) return false;
    write_metrics_csv(m, os);
    return bool(os);
}

/// Plain-text `key = value` summary block over the trailing window.
inline void write_summary(const RunMetrics& m, size_t window, std::ostream& os) {
    RunMetrics::Means w = m.window_means(window);
    char buf[64];
    auto kv = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.10g", v);
        os << key << " = " << buf << '\n';
    };
    os << "steps = " << m.rows.size() << '\n';
    os << "window = " << window << '\n';
    kv("mean_I_f", w.fine_sweeps);
    kv("mean_I_c", w.coarse_sweeps);
    kv("mean_NCC_f", w.sync_fine);
    kv("mean_NCC_c", w.sync_coarse);
    kv("mean_NCC_t", w.sync_total);
    kv("mean_N_Lap", w.lap_equiv);
    os << "all_converged = " << (w.all_converged ? "true" : "false") << '\n';
}

}  // namespace ismg
