/// @file grid.hpp
/// Grid geometry, boundary-condition descriptors, and pressure-closure derivation.
///
/// The domain is an nx x ny block of square cells of spacing h (MAC layout:
/// pressure at cell centers, u on vertical faces, v on horizontal faces).
/// Coarsening works on logical tiles of `tile` cells per axis; the last tile
/// per axis may be short (padding is logical only, no storage is allocated
/// for padded cells).

#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace ismg {

enum class Side : int { west = 0, east = 1, south = 2, north = 3 };

inline constexpr std::array<Side, 4> all_sides = {Side::west, Side::east,
                                                  Side::south, Side::north};

enum class BcKind {
    dirichlet_velocity,       // wall with prescribed (u,v); pressure sees Neumann
    symmetry_fixed_pressure,  // mirror velocity, pin pressure on the face
    periodic,                 // wraparound (must pair with the opposite side)
    inlet                     // no-slip wall with a prescribed normal-velocity span
};

struct BoundaryCondition {
    BcKind kind = BcKind::dirichlet_velocity;
    double u_wall = 0.0;   // dirichlet_velocity: velocity components at the wall
    double v_wall = 0.0;
    double p_wall = 0.0;   // symmetry_fixed_pressure: face pressure (benchmarks use 0)
    double v_inflow = 0.0; // inlet: prescribed normal velocity on the span
    int inlet_start = 0;   // inlet: first face index of the span
    int inlet_width = 0;   // inlet: span width in faces

    static BoundaryCondition no_slip() { return {}; }
    static BoundaryCondition moving_wall(double u, double v) {
        BoundaryCondition b;
        b.u_wall = u;
        b.v_wall = v;
        return b;
    }
    static BoundaryCondition symmetry(double p = 0.0) {
        BoundaryCondition b;
        b.kind = BcKind::symmetry_fixed_pressure;
        b.p_wall = p;
        return b;
    }
    static BoundaryCondition wrap() {
        BoundaryCondition b;
        b.kind = BcKind::periodic;
        return b;
    }
    static BoundaryCondition inflow(double v, int start, int width) {
        BoundaryCondition b;
        b.kind = BcKind::inlet;
        b.v_inflow = v;
        b.inlet_start = start;
        b.inlet_width = width;
        return b;
    }
};

struct GridSpec {
    int nx = 0;
    int ny = 0;
    double h = 1.0;
    int tile = 16;
    std::array<BoundaryCondition, 4> bc{};

    const BoundaryCondition& side(Side s) const { return bc[static_cast<int>(s)]; }
    BoundaryCondition& side(Side s) { return bc[static_cast<int>(s)]; }

    /// Throws std::invalid_argument on inconsistent setups (periodic sides must
    /// pair up; inlet spans must fit the side they sit on).
    void validate() const {
        if (nx < 1 || ny < 1) throw std::invalid_argument("grid: nx, ny must be >= 1");
        if (h <= 0.0) throw std::invalid_argument("grid: h must be positive");
        if (tile < 2) throw std::invalid_argument("grid: tile must be >= 2");
        auto per = [&](Side s) { return side(s).kind == BcKind::periodic; };
        if (per(Side::west) != per(Side::east))
            throw std::invalid_argument("grid: periodic west/east must pair");
        if (per(Side::south) != per(Side::north))
            throw std::invalid_argument("grid: periodic south/north must pair");
        for (Side s : all_sides) {
            const BoundaryCondition& b = side(s);
            if (b.kind != BcKind::inlet) continue;
            int extent = (s == Side::south || s == Side::north) ? nx : ny;
            if (b.inlet_width < 1 || b.inlet_start < 0 ||
                b.inlet_start + b.inlet_width > extent)
                throw std::invalid_argument("grid: inlet span out of range");
        }
    }
};

struct PaddedDims {
    int padded_nx = 0;
    int padded_ny = 0;
    int last_tile_w = 0;  // true interior extent of the last tile per axis
    int last_tile_h = 0;
};

/// Logical padded extents: smallest tile multiples covering the interior.
/// Example: nx = 500, tile = 16 -> padded 512 with a 4-cell-wide last tile.
inline PaddedDims padded_dims(const GridSpec& g) {
    PaddedDims p;
    int tcx = (g.nx + g.tile - 1) / g.tile;
    int tcy = (g.ny + g.tile - 1) / g.tile;
    p.padded_nx = tcx * g.tile;
    p.padded_ny = tcy * g.tile;
    p.last_tile_w = g.nx - (tcx - 1) * g.tile;
    p.last_tile_h = g.ny - (tcy - 1) * g.tile;
    return p;
}

enum class PressureBcKind { neumann, dirichlet_zero, periodic };

/// Pressure-correction closures implied by the velocity boundary conditions:
/// prescribed-velocity sides carry zero normal pressure-gradient, fixed-pressure
/// sides pin the correction to zero on the face, periodic wraps around.
inline std::array<PressureBcKind, 4> pressure_bc(const GridSpec& g) {
    std::array<PressureBcKind, 4> out{};
    for (Side s : all_sides) {
        switch (g.side(s).kind) {
            case BcKind::dirichlet_velocity:
            case BcKind::inlet:
                out[static_cast<int>(s)] = PressureBcKind::neumann;
                break;
            case BcKind::symmetry_fixed_pressure:
                out[static_cast<int>(s)] = PressureBcKind::dirichlet_zero;
                break;
            case BcKind::periodic:
                out[static_cast<int>(s)] = PressureBcKind::periodic;
                break;
        }
    }
    return out;
}

/// True when the pressure problem has the constant nullspace (no side pins the
/// pressure anywhere); solvers then anchor the iterate by mean subtraction.
inline bool pressure_singular(const std::array<PressureBcKind, 4>& bc) {
    for (auto k : bc)
        if (k == PressureBcKind::dirichlet_zero) return false;
    return true;
}

}  // namespace ismg
