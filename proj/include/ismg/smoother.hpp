/// @file smoother.hpp
/// Fine-level operator (flux-form five-point Laplacian) and red-black
/// Gauss-Seidel relaxation.
///
/// The fine matrix is assembled implicitly: every open face couples the two
/// adjacent cells with +1, the diagonal is -(open faces + 2 * fixed-pressure
/// faces). Wall (zero-gradient) faces drop out entirely, fixed-pressure faces
/// fold a ghost cell mirrored to -inner into the diagonal. Sweeps read
/// neighbors through the ghost ring: non-periodic ghosts are pinned to zero so
/// the padded five-point sum equals the matrix row product without branches.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "field.hpp"
#include "grid.hpp"

namespace ismg {

template <typename T>
struct FineStage {
    int nx = 0, ny = 0;
    std::array<PressureBcKind, 4> bc{};
    bool periodic_x = false;
    bool periodic_y = false;
    bool singular = false;   // constant nullspace: anchor iterates by mean
    ScalarField<T> diag;     // positive d(i,j); the matrix diagonal is -d

    FineStage() : diag(1, 1) {}
    std::int64_t cells() const { return std::int64_t(nx) * ny; }
};

template <typename T>
FineStage<T> build_fine_stage(const GridSpec& g) {
    FineStage<T> st;
    st.nx = g.nx;
    st.ny = g.ny;
    st.bc = pressure_bc(g);
    st.periodic_x = st.bc[int(Side::west)] == PressureBcKind::periodic;
    st.periodic_y = st.bc[int(Side::south)] == PressureBcKind::periodic;
    st.singular = pressure_singular(st.bc);
    st.diag = ScalarField<T>(g.nx, g.ny);

    auto face_weight = [&](Side s) -> T {
        switch (st.bc[int(s)]) {
            case PressureBcKind::neumann: return T(0);
            case PressureBcKind::dirichlet_zero: return T(2);
            case PressureBcKind::periodic: return T(1);
        }
        return T(0);
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            T d = 0;
            d += (i > 0) ? T(1) : face_weight(Side::west);
            d += (i < g.nx - 1) ? T(1) : face_weight(Side::east);
            d += (j > 0) ? T(1) : face_weight(Side::south);
            d += (j < g.ny - 1) ? T(1) : face_weight(Side::north);
            if (d <= T(0))
                throw std::domain_error("smoother: fine row has empty stencil");
            st.diag(i, j) = d;
        }
    return st;
}

/// Reset the full ghost ring to zero (entry state for the ghost-as-zero trick;
/// periodic images are re-established per half-sweep).
template <typename T>
void zero_ghosts(ScalarField<T>& f) {
    for (int j = -1; j <= f.ny; ++j) {
        f(-1, j) = T(0);
        f(f.nx, j) = T(0);
    }
    for (int i = -1; i <= f.nx; ++i) {
        f(i, -1) = T(0);
        f(i, f.ny) = T(0);
    }
}

template <typename T>
void refresh_periodic_ghosts(ScalarField<T>& f, bool periodic_x, bool periodic_y) {
    const int nx = f.nx, ny = f.ny;
    if (periodic_x)
        for (int j = 0; j < ny; ++j) {
            f(-1, j) = f(nx - 1, j);
            f(nx, j) = f(0, j);
        }
    if (periodic_y)
        for (int i = 0; i < nx; ++i) {
            f(i, -1) = f(i, ny - 1);
            f(i, ny) = f(i, 0);
        }
}

/// One red-black sweep (two colored half-sweeps; each costs one global
/// synchronization on the target machine, so a full sweep counts as 2).
/// Update: x_c = (sum of open neighbors - b_c) / d_c.
template <typename T>
void rbgs_sweep(const FineStage<T>& st, ScalarField<T>& x, const ScalarField<T>& b) {
    for (int color = 0; color < 2; ++color) {
        refresh_periodic_ghosts(x, st.periodic_x, st.periodic_y);
        for (int j = 0; j < st.ny; ++j) {
            const T* xm = x.row(j - 1);
            T* xr = x.row(j);
            const T* xp = x.row(j + 1);
            const T* br = b.row(j);
            const T* dr = st.diag.row(j);
            for (int i = (color + j) & 1; i < st.nx; i += 2) {
                T s = xr[i - 1] + xr[i + 1] + xm[i] + xp[i];
                xr[i] = (s - br[i]) / dr[i];
            }
        }
    }
}

/// Max-norm residual of the fine system; optionally stores r = b - A x.
/// Refreshes x's periodic images, hence the mutable iterate.
template <typename T>
T fine_residual(const FineStage<T>& st, ScalarField<T>& x, const ScalarField<T>& b,
                ScalarField<T>* out = nullptr) {
    refresh_periodic_ghosts(x, st.periodic_x, st.periodic_y);
    T rmax = 0;
    for (int j = 0; j < st.ny; ++j) {
        const T* xm = x.row(j - 1);
        const T* xr = x.row(j);
        const T* xp = x.row(j + 1);
        const T* br = b.row(j);
        const T* dr = st.diag.row(j);
        T* rr = out ? out->row(j) : nullptr;
        for (int i = 0; i < st.nx; ++i) {
            T ax = xr[i - 1] + xr[i + 1] + xm[i] + xp[i] - dr[i] * xr[i];
            T r = br[i] - ax;
            if (rr) rr[i] = r;
            rmax = std::max(rmax, std::abs(r));
        }
    }
    return rmax;
}

/// Remove the iterate's mean on singular (all zero-gradient / periodic)
/// problems; applied after convergence checks, not per sweep.
template <typename T>
void anchor_mean(const FineStage<T>& st, ScalarField<T>& x) {
    if (st.singular) x.shift_interior(-x.interior_mean());
}

}  // namespace ismg
