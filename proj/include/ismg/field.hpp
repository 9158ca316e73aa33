/// @file field.hpp
/// Ghosted scalar fields, the staggered velocity pair, and boundary application.

#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ismg/grid.hpp"

namespace ismg {

/// Cell-centered scalar with a one-cell ghost ring. Interior indices run
/// i in [0, nx), j in [0, ny); ghosts sit at i = -1, nx and j = -1, ny.
/// Storage is zero-initialized, so untouched ghosts read as 0.
template <typename T>
struct ScalarField {
    int nx = 0, ny = 0;
    std::vector<T> data;

    ScalarField() = default;
    ScalarField(int nx_, int ny_) : nx(nx_), ny(ny_), data(size_t(nx_ + 2) * (ny_ + 2), T(0)) {}

    int stride() const { return nx + 2; }
    T* row(int j) { return data.data() + size_t(j + 1) * (nx + 2) + 1; }
    const T* row(int j) const { return data.data() + size_t(j + 1) * (nx + 2) + 1; }

    T& operator()(int i, int j) { return data[size_t(j + 1) * (nx + 2) + (i + 1)]; }
    const T& operator()(int i, int j) const { return data[size_t(j + 1) * (nx + 2) + (i + 1)]; }

    void fill(T v) {
        for (auto& x : data) x = v;
    }
    void fill_interior(T v) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) (*this)(i, j) = v;
    }

    T interior_sum() const {
        T s = 0;
        for (int j = 0; j < ny; ++j) {
            const T* r = row(j);
            for (int i = 0; i < nx; ++i) s += r[i];
        }
        return s;
    }
    T interior_mean() const { return interior_sum() / T(size_t(nx) * ny); }
    T interior_max_abs() const {
        T m = 0;
        for (int j = 0; j < ny; ++j) {
            const T* r = row(j);
            for (int i = 0; i < nx; ++i) m = std::max(m, std::abs(r[i]));
        }
        return m;
    }
    void shift_interior(T c) {
        for (int j = 0; j < ny; ++j) {
            T* r = row(j);
            for (int i = 0; i < nx; ++i) r[i] += c;
        }
    }
    void add_interior(const ScalarField& o) {
        for (int j = 0; j < ny; ++j) {
            T* r = row(j);
            const T* q = o.row(j);
            for (int i = 0; i < nx; ++i) r[i] += q[i];
        }
    }
};

/// Fill the ghost ring of a cell-centered field from per-side pressure closures.
/// neumann copies the adjacent interior value (zero normal gradient), dirichlet_zero
/// negates it (zero face value), periodic wraps. Corners resolve by applying the
/// y-sides over the already-filled x-ghost columns.
template <typename T>
void apply_scalar_bc(ScalarField<T>& f, const std::array<PressureBcKind, 4>& bc) {
    const int nx = f.nx, ny = f.ny;
    auto ghost = [](PressureBcKind k, T inner, T wrapped) {
        switch (k) {
            case PressureBcKind::neumann: return inner;
            case PressureBcKind::dirichlet_zero: return -inner;
            default: return wrapped;
        }
    };
    PressureBcKind w = bc[0], e = bc[1], s = bc[2], n = bc[3];
    for (int j = 0; j < ny; ++j) {
        f(-1, j) = ghost(w, f(0, j), f(nx - 1, j));
        f(nx, j) = ghost(e, f(nx - 1, j), f(0, j));
    }
    for (int i = -1; i <= nx; ++i) {
        f(i, -1) = ghost(s, f(i, 0), f(i, ny - 1));
        f(i, ny) = ghost(n, f(i, ny - 1), f(i, 0));
    }
}

/// Staggered (MAC) velocity. u(i,j) lives on the vertical face x = i*h,
/// y = (j+0.5)*h for i in [0..nx], j in [0..ny-1]; v(i,j) on the horizontal face
/// x = (i+0.5)*h, y = j*h for i in [0..nx-1], j in [0..ny]. Each component keeps
/// one ghost layer on every side (u also at i = nx+1, v at j = ny+1 for wraps).
template <typename T>
struct MacVelocity {
    int nx = 0, ny = 0;
    std::vector<T> u_data, v_data;

    MacVelocity() = default;
    MacVelocity(int nx_, int ny_)
        : nx(nx_),
          ny(ny_),
          u_data(size_t(nx_ + 3) * (ny_ + 2), T(0)),
          v_data(size_t(nx_ + 2) * (ny_ + 3), T(0)) {}

    T& u(int i, int j) { return u_data[size_t(j + 1) * (nx + 3) + (i + 1)]; }
    const T& u(int i, int j) const { return u_data[size_t(j + 1) * (nx + 3) + (i + 1)]; }
    T& v(int i, int j) { return v_data[size_t(j + 1) * (nx + 2) + (i + 1)]; }
    const T& v(int i, int j) const { return v_data[size_t(j + 1) * (nx + 2) + (i + 1)]; }

    /// Largest per-face change against another field (steady-state detector).
    T max_change(const MacVelocity& o) const {
        T m = 0;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i <= nx; ++i) m = std::max(m, std::abs(u(i, j) - o.u(i, j)));
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i < nx; ++i) m = std::max(m, std::abs(v(i, j) - o.v(i, j)));
        return m;
    }

    T max_abs() const {
        T m = 0;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i <= nx; ++i) m = std::max(m, std::abs(u(i, j)));
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i < nx; ++i) m = std::max(m, std::abs(v(i, j)));
        return m;
    }
};

/// Impose the velocity boundary conditions: prescribed wall-normal faces, then
/// tangential ghost layers (mirror rule 2*wall - interior for moving walls,
/// plain mirror for symmetry), then periodic images. Idempotent: ghosts are pure
/// functions of interior values and wall data.
template <typename T>
void apply_velocity_bc(MacVelocity<T>& vel, const GridSpec& g) {
    const int nx = g.nx, ny = g.ny;
    const BoundaryCondition &W = g.side(Side::west), &E = g.side(Side::east);
    const BoundaryCondition &S = g.side(Side::south), &N = g.side(Side::north);
    const bool per_x = W.kind == BcKind::periodic;
    const bool per_y = S.kind == BcKind::periodic;

    auto normal_value = [](const BoundaryCondition& b, bool x_side, int k) -> T {
        switch (b.kind) {
            case BcKind::dirichlet_velocity: return T(x_side ? b.u_wall : b.v_wall);
            case BcKind::inlet:
                return (k >= b.inlet_start && k < b.inlet_start + b.inlet_width)
                           ? T(b.v_inflow)
                           : T(0);
            default: return T(0);  // unused
        }
    };

    // wall-normal faces
    if (!per_x) {
        for (int j = 0; j < ny; ++j) {
            vel.u(0, j) = W.kind == BcKind::symmetry_fixed_pressure ? vel.u(1, j)
                                                                    : normal_value(W, true, j);
            vel.u(nx, j) = E.kind == BcKind::symmetry_fixed_pressure
                               ? vel.u(nx - 1, j)
                               : normal_value(E, true, j);
        }
    }
    if (!per_y) {
        for (int i = 0; i < nx; ++i) {
            vel.v(i, 0) = S.kind == BcKind::symmetry_fixed_pressure ? vel.v(i, 1)
                                                                    : normal_value(S, false, i);
            vel.v(i, ny) = N.kind == BcKind::symmetry_fixed_pressure
                               ? vel.v(i, ny - 1)
                               : normal_value(N, false, i);
        }
    }

    // tangential ghost layers
    auto tangential_ghost = [](const BoundaryCondition& b, T wall_speed, T inner) -> T {
        switch (b.kind) {
            case BcKind::dirichlet_velocity: return T(2) * wall_speed - inner;
            case BcKind::inlet: return -inner;  // inlet side is a no-slip wall tangentially
            case BcKind::symmetry_fixed_pressure: return inner;
            default: return inner;  // periodic handled below
        }
    };
    if (!per_x) {
        for (int j = 0; j <= ny; ++j) {
            vel.v(-1, j) = tangential_ghost(W, T(W.v_wall), vel.v(0, j));
            vel.v(nx, j) = tangential_ghost(E, T(E.v_wall), vel.v(nx - 1, j));
        }
    }
    if (!per_y) {
        for (int i = 0; i <= nx; ++i) {
            vel.u(i, -1) = tangential_ghost(S, T(S.u_wall), vel.u(i, 0));
            vel.u(i, ny) = tangential_ghost(N, T(N.u_wall), vel.u(i, ny - 1));
        }
    }

    // periodic images; y first (core columns), then x over full rows so that
    // mixed corners pick up already-wrapped values
    if (per_y) {
        for (int i = 0; i <= nx; ++i) {
            vel.u(i, -1) = vel.u(i, ny - 1);
            vel.u(i, ny) = vel.u(i, 0);
        }
        for (int i = 0; i < nx; ++i) {
            vel.v(i, ny) = vel.v(i, 0);
            vel.v(i, -1) = vel.v(i, ny - 1);
            vel.v(i, ny + 1) = vel.v(i, 1);
        }
    }
    if (per_x) {
        for (int j = -1; j <= ny; ++j) {
            vel.u(nx, j) = vel.u(0, j);
            vel.u(-1, j) = vel.u(nx - 1, j);
            vel.u(nx + 1, j) = vel.u(1, j);
        }
        for (int j = -1; j <= ny + 1; ++j) {
            vel.v(-1, j) = vel.v(nx - 1, j);
            vel.v(nx, j) = vel.v(0, j);
        }
    }
}

}  // namespace ismg
