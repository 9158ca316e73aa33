/// @file config.hpp
/// Flat `key = value` run-configuration files. Keys use section prefixes
/// (grid., fluid., run., cycle., sweep., output.); unknown keys are errors so
/// typos cannot silently fall back to defaults.

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bench.hpp"

namespace ismg {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Scheme scheme_from_name(const std::string& s) {
    if (s == "plain" || s == "plain_gs") return Scheme::plain_gs;
    if (s == "ismg") return Scheme::ismg;
    if (s == "gmg") return Scheme::gmg;
    if (s == "acm") return Scheme::acm;
    throw ConfigError("config: unknown scheme '" + s + "'");
}

struct RunConfig {
    BenchmarkCase bench;
    CycleConfig cycle;
    SweepAxes sweep;
    long snapshot_every = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline double parse_num(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + v + "' for key '" + key + "'");
    }
}

inline long parse_int(const std::string& key, const std::string& v) {
    double x = parse_num(key, v);
    long n = long(x);
    if (double(n) != x)
        throw ConfigError("config: expected integer value for key '" + key + "', got '" + v + "'");
    return n;
}

}  // namespace detail

/// Parse one file. Blank lines and `#` comments are ignored; every other line
/// must be `key = value` with a whitelisted key. The `case` key is required
/// and picks the benchmark defaults; later keys override individual fields.
inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");

    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                              ": empty key or value");
        kv.emplace_back(key, val);
    }

    std::string case_name;
    for (const auto& [key, val] : kv)
        if (key == "case") case_name = val;
    if (case_name.empty()) throw ConfigError("config: missing required key 'case'");

    RunConfig rc;
    bool saw_sweep_tol_fine = false, saw_sweep_max = false;
    // Case-specific shape overrides must be applied by re-running the setup,
    // so collect them first.
    long n = 0, nx = 0, ny = 0;
    for (const auto& [key, val] : kv) {
        if (key == "grid.n") n = detail::parse_int(key, val);
        if (key == "grid.nx") nx = detail::parse_int(key, val);
        if (key == "grid.ny") ny = detail::parse_int(key, val);
    }

    if (case_name == "shear_cavity") {
        rc.bench = setup_shear_cavity(n > 0 ? int(n) : 500);
    } else if (case_name == "lid_cavity") {
        rc.bench = setup_lid_cavity(n > 0 ? int(n) : 256);
    } else if (case_name == "jet") {
        rc.bench = setup_jet(nx > 0 ? int(nx) : 250, ny > 0 ? int(ny) : 500);
    } else if (case_name == "channel_jets") {
        rc.bench = setup_channel_jets(nx > 0 ? int(nx) : 200, ny > 0 ? int(ny) : 400);
    } else {
        throw ConfigError("config: unknown case '" + case_name + "'");
    }

    // Reynolds-style overrides are resolved against the final grid size below.
    double re = 0.0, u0 = 0.0;

    for (const auto& [key, val] : kv) {
        if (key == "case" || key == "grid.n" || key == "grid.nx" || key == "grid.ny") {
            // handled above
        } else if (key == "grid.tile") {
            rc.bench.grid.tile = int(detail::parse_int(key, val));
        } else if (key == "fluid.nu") {
            rc.bench.nu = detail::parse_num(key, val);
        } else if (key == "fluid.dt") {
            rc.bench.dt = detail::parse_num(key, val);
        } else if (key == "fluid.re") {
            re = detail::parse_num(key, val);
        } else if (key == "fluid.u0") {
            u0 = detail::parse_num(key, val);
        } else if (key == "fluid.v0") {
            double v0 = detail::parse_num(key, val);
            for (Side s : all_sides) {
                BoundaryCondition& b = rc.bench.grid.side(s);
                double scale_u = (b.u_wall > 0) - (b.u_wall < 0);
                double scale_v = (b.v_wall > 0) - (b.v_wall < 0);
                if (b.kind == BcKind::dirichlet_velocity) {
                    b.u_wall = scale_u * v0;
                    b.v_wall = scale_v * v0;
                } else if (b.kind == BcKind::inlet) {
                    b.v_inflow = v0;
                }
            }
        } else if (key == "run.steps") {
            rc.bench.steps = detail::parse_int(key, val);
        } else if (key == "run.window") {
            rc.bench.window = detail::parse_int(key, val);
        } else if (key == "run.steady_tol") {
            rc.bench.steady_tol = detail::parse_num(key, val);
        } else if (key == "run.t_max") {
            rc.bench.t_max = detail::parse_num(key, val);
        } else if (key == "run.seed") {
            rc.bench.seed = (unsigned long)detail::parse_int(key, val);
        } else if (key == "cycle.scheme") {
            rc.cycle.scheme = scheme_from_name(val);
        } else if (key == "cycle.tile") {
            rc.cycle.tile = int(detail::parse_int(key, val));
        } else if (key == "cycle.depth") {
            rc.cycle.depth = int(detail::parse_int(key, val));
        } else if (key == "cycle.tol_fine") {
            rc.cycle.tol_fine = detail::parse_num(key, val);
        } else if (key == "cycle.tol_coarse") {
            rc.cycle.tol_coarse = detail::parse_num(key, val);
        } else if (key == "cycle.max_sweeps") {
            rc.cycle.max_total_sweeps = detail::parse_int(key, val);
        } else if (key == "cycle.stall_factor") {
            rc.cycle.stall_factor = detail::parse_num(key, val);
        } else if (key == "cycle.pre_smooth") {
            rc.cycle.acm_pre_smooth = int(detail::parse_int(key, val));
        } else if (key == "cycle.post_smooth") {
            rc.cycle.acm_post_smooth = int(detail::parse_int(key, val));
        } else if (key == "sweep.schemes") {
            rc.sweep.schemes.clear();
            for (const std::string& s : detail::split_list(val))
                rc.sweep.schemes.push_back(scheme_from_name(s));
        } else if (key == "sweep.tiles") {
            rc.sweep.tiles.clear();
            for (const std::string& s : detail::split_list(val))
                rc.sweep.tiles.push_back(int(detail::parse_int(key, s)));
        } else if (key == "sweep.depths") {
            rc.sweep.depths.clear();
            for (const std::string& s : detail::split_list(val))
                rc.sweep.depths.push_back(int(detail::parse_int(key, s)));
        } else if (key == "sweep.tol_coarse") {
            rc.sweep.tol_coarse.clear();
            for (const std::string& s : detail::split_list(val))
                rc.sweep.tol_coarse.push_back(detail::parse_num(key, s));
        } else if (key == "sweep.tol_fine") {
            rc.sweep.tol_fine = detail::parse_num(key, val);
            saw_sweep_tol_fine = true;
        } else if (key == "sweep.max_sweeps") {
            rc.sweep.max_total_sweeps = detail::parse_int(key, val);
            saw_sweep_max = true;
        } else if (key == "output.snapshot_every") {
            rc.snapshot_every = detail::parse_int(key, val);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (re > 0.0) {
        double u_ref = u0 > 0.0 ? u0 : 0.1;
        rc.bench.nu = u_ref * rc.bench.grid.nx * rc.bench.grid.h / re;
    }
    if (u0 > 0.0 && case_name == "lid_cavity")
        rc.bench.grid.side(Side::north).u_wall = u0;

    rc.bench.grid.validate();
    rc.cycle.validate();
    if (!saw_sweep_tol_fine) rc.sweep.tol_fine = rc.cycle.tol_fine;
    if (!saw_sweep_max) rc.sweep.max_total_sweeps = rc.cycle.max_total_sweeps;
    return rc;
}

}  // namespace ismg
