/// @file projection.hpp
/// Incremental pressure-correction time stepping: explicit predictor
/// (conservative-flux advection + central diffusion + old pressure gradient),
/// divergence source, delegated Poisson solve for the pressure change, and
/// divergence-removing velocity correction.
///
/// The Poisson system is posed in flux form: A dp = h^2 * div(v*) / dt with A
/// the five-point flux matrix of smoother.hpp. The correction subtracts
/// dt * grad(dp) on every face through dp's ghost ring, so prescribed-velocity
/// wall faces are bitwise unchanged (zero-gradient ghosts) while fixed-pressure
/// boundary faces receive the outflow update the matrix closure assumed.

#pragma once

#include <cmath>
#include <cstdio>

#include "cycles.hpp"
#include "field.hpp"
#include "grid.hpp"
#include "log.hpp"
#include "metrics.hpp"

namespace ismg {

template <typename T>
struct FluidState {
    MacVelocity<T> vel;
    ScalarField<T> p;
    double t = 0.0;
    double dt = 1.0;
    double nu = 0.1;
    long step_count = 0;

    explicit FluidState(const GridSpec& g) : vel(g.nx, g.ny), p(g.nx, g.ny) {}
};

/// Cell-centered divergence from the cell's four face velocities.
template <typename T>
void divergence(const MacVelocity<T>& vel, const GridSpec& g, ScalarField<T>& out) {
    const T invh = T(1.0 / g.h);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) =
                (vel.u(i + 1, j) - vel.u(i, j) + vel.v(i, j + 1) - vel.v(i, j)) * invh;
}

/// Net outward boundary flux of the face-velocity field (Gauss-theorem
/// counterpart of the interior divergence sum; identical to round-off).
template <typename T>
T boundary_flux(const MacVelocity<T>& vel, const GridSpec& g) {
    T s = 0;
    for (int j = 0; j < g.ny; ++j) s += vel.u(g.nx, j) - vel.u(0, j);
    for (int i = 0; i < g.nx; ++i) s += vel.v(i, g.ny) - vel.v(i, 0);
    return s * T(g.h);
}

/// 0.5 * h^2 * sum of squared face velocities (stability diagnostic).
template <typename T>
double kinetic_energy(const MacVelocity<T>& vel, const GridSpec& g) {
    double s = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) s += double(vel.u(i, j)) * double(vel.u(i, j));
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s += double(vel.v(i, j)) * double(vel.v(i, j));
    return 0.5 * g.h * g.h * s;
}

/// Explicit predictor v* = v + dt (-(v . grad) v + nu lap v - grad p), written
/// in conservative flux form with arithmetic face averages; second order on
/// the staggered grid. Writes only the faces the time step owns (interior
/// faces, plus boundary-normal faces on periodic axes); prescribed faces are
/// re-established by apply_velocity_bc afterwards. Inputs must have BCs
/// applied.
template <typename T>
void predictor(const FluidState<T>& st, const GridSpec& g, MacVelocity<T>& out) {
    const int nx = g.nx, ny = g.ny;
    const bool px = g.side(Side::west).kind == BcKind::periodic;
    const bool py = g.side(Side::south).kind == BcKind::periodic;
    const T dt = T(st.dt), nu = T(st.nu);
    const T invh = T(1.0 / g.h), invh2 = T(1.0 / (g.h * g.h));
    const MacVelocity<T>& V = st.vel;
    const ScalarField<T>& p = st.p;
    const T half = T(0.5);

    for (int j = 0; j < ny; ++j)
        for (int i = px ? 0 : 1; i < nx; ++i) {
            // u-face (i,j): advection fluxes at the two cell centers and the
            // two cell corners bracketing the face.
            T uE = half * (V.u(i, j) + V.u(i + 1, j));      // center of cell i
            T uW = half * (V.u(i - 1, j) + V.u(i, j));      // center of cell i-1
            T uN = half * (V.u(i, j) + V.u(i, j + 1));      // corner above
            T uS = half * (V.u(i, j - 1) + V.u(i, j));      // corner below
            T vN = half * (V.v(i - 1, j + 1) + V.v(i, j + 1));
            T vS = half * (V.v(i - 1, j) + V.v(i, j));
            T adv = (uE * uE - uW * uW + uN * vN - uS * vS) * invh;
            T lap = (V.u(i + 1, j) + V.u(i - 1, j) + V.u(i, j + 1) + V.u(i, j - 1) -
                     T(4) * V.u(i, j)) *
                    invh2;
            T gpx = (p(i, j) - p(i - 1, j)) * invh;
            out.u(i, j) = V.u(i, j) + dt * (-adv + nu * lap - gpx);
        }

    for (int j = py ? 0 : 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            T vN = half * (V.v(i, j) + V.v(i, j + 1));      // center of cell j
            T vS = half * (V.v(i, j - 1) + V.v(i, j));      // center of cell j-1
            T vE = half * (V.v(i, j) + V.v(i + 1, j));      // corner right
            T vW = half * (V.v(i - 1, j) + V.v(i, j));      // corner left
            T uE = half * (V.u(i + 1, j - 1) + V.u(i + 1, j));
            T uW = half * (V.u(i, j - 1) + V.u(i, j));
            T adv = (vN * vN - vS * vS + vE * uE - vW * uW) * invh;
            T lap = (V.v(i + 1, j) + V.v(i - 1, j) + V.v(i, j + 1) + V.v(i, j - 1) -
                     T(4) * V.v(i, j)) *
                    invh2;
            T gpy = (p(i, j) - p(i, j - 1)) * invh;
            out.v(i, j) = V.v(i, j) + dt * (-adv + nu * lap - gpy);
        }
}

/// v <- v - dt * grad(dp) on every face, reading dp through its freshly
/// applied ghost ring: zero-gradient ghosts leave prescribed faces untouched,
/// mirrored (fixed-pressure) ghosts give boundary faces the closure update,
/// periodic ghosts wrap. Mutates dp's ghost ring only.
template <typename T>
void correct(MacVelocity<T>& vel, ScalarField<T>& dp, double dt, const GridSpec& g) {
    apply_scalar_bc(dp, pressure_bc(g));
    const T c = T(dt / g.h);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) vel.u(i, j) -= c * (dp(i, j) - dp(i - 1, j));
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) vel.v(i, j) -= c * (dp(i, j) - dp(i, j - 1));
}

/// One time increment: BCs, predictor, divergence source, pressure-change
/// solve, correction, pressure accumulation. A non-converged solve still
/// completes the step (capped-iteration policy); the caller reads the report
/// and decides whether to abort.
template <typename T>
ConvergenceReport step(FluidState<T>& st, const GridSpec& g, const PressureSolver<T>& solver,
                       RunMetrics& m) {
    apply_scalar_bc(st.p, pressure_bc(g));
    apply_velocity_bc(st.vel, g);

    if (st.step_count == 0) {
        double dcfl = 4.0 * st.nu * st.dt / (g.h * g.h);
        if (dcfl > 0.5) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "diffusion number %.3g exceeds 0.5", dcfl);
            log::warn(buf);
        }
    }
    double acfl = st.dt * double(st.vel.max_abs()) / g.h;
    if (acfl > 0.5) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "advective CFL %.3g exceeds 0.5 at step %ld", acfl,
                      st.step_count + 1);
        log::warn(buf);
    }

    ConvergenceReport rep;
    if (st.dt == 0.0) {  // degenerate increment: velocity identity
        st.step_count += 1;
        m.close_timestep(st.step_count, 0.0, true);
        return rep;
    }

    MacVelocity<T> vstar = st.vel;
    predictor(st, g, vstar);
    apply_velocity_bc(vstar, g);

    ScalarField<T> rhs(g.nx, g.ny);
    divergence(vstar, g, rhs);
    const T scale = T(g.h * g.h / st.dt);
    for (int j = 0; j < g.ny; ++j) {
        T* r = rhs.row(j);
        for (int i = 0; i < g.nx; ++i) r[i] *= scale;
    }

    ScalarField<T> dp(g.nx, g.ny);
    rep = solver.solve(dp, rhs, m);

    correct(vstar, dp, st.dt, g);
    st.vel = vstar;
    st.p.add_interior(dp);
    st.t += st.dt;
    st.step_count += 1;
    m.close_timestep(st.step_count, rep.residual, rep.converged);
    return rep;
}

}  // namespace ismg
