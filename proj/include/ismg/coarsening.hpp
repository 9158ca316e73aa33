/// @file coarsening.hpp
/// Coarse-operator construction (interpolated 9-point, summed 5-point
/// hierarchy, re-discretized 5-point), grid transfers, and coarse-level
/// Gauss-Seidel relaxation.
///
/// All coordinates are in fine-cell units (the fine matrix is the flux-form
/// five-point stencil, see smoother.hpp); cell i spans [i, i+1] with center
/// i + 0.5. The interpolated construction accumulates, fine face segment by
/// fine face segment, the bilinear-interpolant flux weights into the 9-point
/// rows of both coarse cells sharing the face — by design this reproduces the
/// sparse triple product R * A * P exactly (restriction = tile summation,
/// prolongation = quadrant-rectangle bilinear interpolation).

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "grid.hpp"

namespace ismg {

enum class Scheme { plain_gs, ismg, gmg, acm };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::plain_gs: return "plain";
        case Scheme::ismg: return "ismg";
        case Scheme::gmg: return "gmg";
        case Scheme::acm: return "acm";
    }
    return "?";
}

/// One axis of the tile decomposition: per-coarse-cell start/extent (the last
/// tile keeps its true, possibly short, interior extent) and the interpolation
/// rectangle extents between adjacent coarse-cell centers.
struct TileAxis {
    int n = 0;          // fine cells along the axis
    int tile = 1;       // nominal tile extent
    bool periodic = false;
    int nc = 0;         // coarse cells
    std::vector<int> start;      // first fine index per tile
    std::vector<int> width;      // interior extent per tile (last may be short)
    std::vector<double> center;  // coarse-cell center coordinate
    std::vector<double> rect;    // rect[k] = center[k+1] - center[k]
    double rect_wrap = 0.0;      // wrap rectangle extent (periodic only)

    struct Locate {
        int k0 = 0, k1 = 0;  // bracketing coarse cells
        double t = 0.0;      // offset from center[k0] within the rectangle
        double dk = 1.0;     // rectangle extent
    };

    TileAxis() = default;
    TileAxis(int n_, int tile_, bool periodic_) : n(n_), tile(tile_), periodic(periodic_) {
        if (n < 1 || tile < 1) throw std::invalid_argument("tile axis: need n >= 1, tile >= 1");
        nc = (n + tile - 1) / tile;
        start.resize(nc);
        width.resize(nc);
        center.resize(nc);
        for (int k = 0; k < nc; ++k) {
            start[k] = k * tile;
            width[k] = (k == nc - 1) ? n - (nc - 1) * tile : tile;
            center[k] = start[k] + width[k] / 2.0;
        }
        rect.resize(nc > 0 ? nc - 1 : 0);
        for (int k = 0; k + 1 < nc; ++k) rect[k] = center[k + 1] - center[k];
        if (periodic) rect_wrap = (width[nc - 1] + width[0]) / 2.0;
        cell_cache_.resize(n);
        for (int i = 0; i < n; ++i) cell_cache_[i] = locate(i + 0.5);
    }

    /// Parent tile of fine index i (start[k] = k*tile makes this exact even
    /// for the short last tile).
    int parent(int i) const { return i / tile; }

    /// Bracketing coarse centers for coordinate c, with one-sided (clamped)
    /// behavior beyond the outermost centers on non-periodic axes and a wrap
    /// rectangle on periodic ones.
    Locate locate(double c) const {
        if (nc == 1) return {0, 0, 0.0, 1.0};
        if (periodic && (c < center[0] || c >= center[nc - 1])) {
            double t = c - center[nc - 1];
            if (t < 0) t += n;
            return {nc - 1, 0, t, rect_wrap};
        }
        if (c <= center[0]) return {0, 1, 0.0, rect[0]};
        if (c >= center[nc - 1]) return {nc - 2, nc - 1, rect[nc - 2], rect[nc - 2]};
        int k = 0;
        while (center[k + 1] <= c) ++k;
        return {k, k + 1, c - center[k], rect[k]};
    }

    /// Cached locate(i + 0.5) — the only coordinates construction and
    /// prolongation ever query.
    const Locate& locate_cell(int i) const { return cell_cache_[i]; }

  private:
    std::vector<Locate> cell_cache_;
};

/// Coarse-index delta from k_from to k_to, folded onto {-1,0,1} adjacency on
/// periodic axes (wraparound couplings land on the geometrically adjacent
/// slot; for nc == 2 both directions reach the same cell and fold to +1).
inline int wrap_delta(int k_to, int k_from, int nc, bool periodic) {
    int d = k_to - k_from;
    if (periodic) {
        if (d > nc / 2) d -= nc;
        if (d < -nc / 2) d += nc;
        if (d == nc - 1) d = -1;
        if (d == -(nc - 1)) d = 1;
    }
    return d;
}

// Stencil slot order matches the operator-dump CSV: C,E,W,N,S,NE,NW,SE,SW.
inline constexpr std::array<int, 9> slot_di = {0, 1, -1, 0, 0, 1, -1, 1, -1};
inline constexpr std::array<int, 9> slot_dj = {0, 0, 0, 1, -1, 1, 1, -1, -1};
inline constexpr std::array<const char*, 9> slot_name = {"C",  "E",  "W",  "N", "S",
                                                         "NE", "NW", "SE", "SW"};

inline int slot_index(int di, int dj) {
    if (di < -1 || di > 1 || dj < -1 || dj > 1)
        throw std::logic_error("coarsening: coupling beyond the 9-point neighborhood");
    static constexpr std::array<int, 9> lut = {8, 4, 7, 2, 0, 1, 6, 3, 5};
    return lut[(dj + 1) * 3 + (di + 1)];
}

/// Per-coarse-cell stencil, stored as nine coefficient planes (corner planes
/// stay zero for five-point operators). ax/ay describe how the *parent* level
/// tiles into this one and carry the interpolation rectangle geometry.
template <typename T>
struct CoarseOperator {
    int ncx = 0, ncy = 0;
    TileAxis ax, ay;
    bool periodic_x = false, periodic_y = false;
    bool five_point = false;
    bool singular = false;  // constant nullspace (no Dirichlet-pressure closure)
    std::array<std::vector<T>, 9> w;

    size_t idx(int I, int J) const { return size_t(J) * ncx + I; }
    std::int64_t cells() const { return std::int64_t(ncx) * ncy; }
    int stencil_points() const { return five_point ? 5 : 9; }

    void init(const TileAxis& ax_, const TileAxis& ay_) {
        ax = ax_;
        ay = ay_;
        ncx = ax.nc;
        ncy = ay.nc;
        periodic_x = ax.periodic;
        periodic_y = ay.periodic;
        for (auto& plane : w) plane.assign(size_t(ncx) * ncy, T(0));
    }
};

// ---------------------------------------------------------------------------
// Bilinear interpolation and its face fluxes on one rectangle.
// Corner values: Q11 at (0,0), Q21 at (dx,0), Q12 at (0,dy), Q22 at (dx,dy).

template <typename T>
inline void check_rect(T dx, T dy) {
    if (!(dx > T(0)) || !(dy > T(0)))
        throw std::invalid_argument("coarsening: interpolation rectangle extents must be positive");
}

template <typename T>
T bilinear_eval(T q11, T q21, T q12, T q22, T x, T y, T dx, T dy) {
    check_rect(dx, dy);
    return (q11 * (dx - x) * (dy - y) + q21 * x * (dy - y) + q12 * (dx - x) * y +
            q22 * x * y) /
           (dx * dy);
}

/// d/dx of the interpolant — constant in x across the rectangle.
template <typename T>
T face_flux_x(T q11, T q21, T q12, T q22, T y, T dx, T dy) {
    check_rect(dx, dy);
    return (-q11 * (dy - y) + q21 * (dy - y) - q12 * y + q22 * y) / (dx * dy);
}

/// d/dy of the interpolant — constant in y across the rectangle.
template <typename T>
T face_flux_y(T q11, T q21, T q12, T q22, T x, T dx, T dy) {
    check_rect(dx, dy);
    return (-q11 * (dx - x) - q21 * x + q12 * (dx - x) + q22 * x) / (dx * dy);
}

// ---------------------------------------------------------------------------
// Interpolated 9-point operator.

template <typename T>
CoarseOperator<T> build_ismg_operator(const GridSpec& g) {
    if (g.tile < 2)
        throw std::invalid_argument("ismg operator: tile must be >= 2");
    auto bc = pressure_bc(g);
    TileAxis ax(g.nx, g.tile, bc[int(Side::west)] == PressureBcKind::periodic);
    TileAxis ay(g.ny, g.tile, bc[int(Side::south)] == PressureBcKind::periodic);
    if (ax.nc < 2 || ay.nc < 2)
        throw std::invalid_argument("ismg operator: need at least 2 coarse cells per axis");

    CoarseOperator<T> op;
    op.init(ax, ay);
    op.five_point = false;
    op.singular = pressure_singular(bc);
    const int ncx = op.ncx, ncy = op.ncy;

    auto add = [&](int I, int J, int Ic, int Jc, double wgt) {
        int di = wrap_delta(Ic, I, ncx, ax.periodic);
        int dj = wrap_delta(Jc, J, ncy, ay.periodic);
        op.w[slot_index(di, dj)][op.idx(I, J)] += T(wgt);
    };

    // Vertical coarse face between columns I and Inb (I+1 or wrap), row J:
    // accumulate the x-flux of each fine face segment on it. The interpolant's
    // x-rectangle spans the two centers; the y-rectangle follows the segment.
    auto vface = [&](int I, int Inb, int J) {
        double dx = (Inb == I + 1) ? ax.rect[I] : ax.rect_wrap;
        int j0 = ay.start[J], hJ = ay.width[J];
        for (int j = j0; j < j0 + hJ; ++j) {
            const TileAxis::Locate& L = ay.locate_cell(j);
            double gw = 1.0 / (dx * L.dk);
            const double t = L.t, dy = L.dk;
            // dp/dx weights on the four rectangle corners
            const double ws[4] = {-gw * (dy - t), gw * (dy - t), -gw * t, gw * t};
            const int ic[4] = {I, Inb, I, Inb};
            const int jc[4] = {L.k0, L.k0, L.k1, L.k1};
            for (int q = 0; q < 4; ++q) {
                add(I, J, ic[q], jc[q], ws[q]);    // out of (I,J) through its east face
                add(Inb, J, ic[q], jc[q], -ws[q]); // into the neighbor, opposite sign
            }
        }
    };
    // Horizontal coarse face between rows J and Jnb, column I.
    auto hface = [&](int I, int J, int Jnb) {
        double dy = (Jnb == J + 1) ? ay.rect[J] : ay.rect_wrap;
        int i0 = ax.start[I], wI = ax.width[I];
        for (int i = i0; i < i0 + wI; ++i) {
            const TileAxis::Locate& L = ax.locate_cell(i);
            double gw = 1.0 / (L.dk * dy);
            const double s = L.t, dx = L.dk;
            const double ws[4] = {-gw * (dx - s), -gw * s, gw * (dx - s), gw * s};
            const int ic[4] = {L.k0, L.k1, L.k0, L.k1};
            const int jc[4] = {J, J, Jnb, Jnb};
            for (int q = 0; q < 4; ++q) {
                add(I, J, ic[q], jc[q], ws[q]);
                add(I, Jnb, ic[q], jc[q], -ws[q]);
            }
        }
    };

    for (int J = 0; J < ncy; ++J) {
        for (int I = 0; I < ncx - 1; ++I) vface(I, I + 1, J);
        if (ax.periodic) vface(ncx - 1, 0, J);
    }
    for (int I = 0; I < ncx; ++I) {
        for (int J = 0; J < ncy - 1; ++J) hface(I, J, J + 1);
        if (ay.periodic) hface(I, ncy - 1, 0);
    }

    // Fixed-pressure closures: each fine boundary face contributes
    // -2 * (interpolated value of the adjacent fine cell center) to the row of
    // the coarse cell owning that face — the fine ghost folds through P.
    auto dclose_x = [&](Side side) {
        if (bc[int(side)] != PressureBcKind::dirichlet_zero) return;
        int I = (side == Side::west) ? 0 : ncx - 1;
        int i = (side == Side::west) ? 0 : g.nx - 1;
        const TileAxis::Locate& Lx = ax.locate_cell(i);
        for (int J = 0; J < ncy; ++J)
            for (int j = ay.start[J]; j < ay.start[J] + ay.width[J]; ++j) {
                const TileAxis::Locate& Ly = ay.locate_cell(j);
                double gw = 1.0 / (Lx.dk * Ly.dk);
                const double s = Lx.t, dx = Lx.dk, t = Ly.t, dy = Ly.dk;
                add(I, J, Lx.k0, Ly.k0, -2.0 * gw * (dx - s) * (dy - t));
                add(I, J, Lx.k1, Ly.k0, -2.0 * gw * s * (dy - t));
                add(I, J, Lx.k0, Ly.k1, -2.0 * gw * (dx - s) * t);
                add(I, J, Lx.k1, Ly.k1, -2.0 * gw * s * t);
            }
    };
    auto dclose_y = [&](Side side) {
        if (bc[int(side)] != PressureBcKind::dirichlet_zero) return;
        int J = (side == Side::south) ? 0 : ncy - 1;
        int j = (side == Side::south) ? 0 : g.ny - 1;
        const TileAxis::Locate& Ly = ay.locate_cell(j);
        for (int I = 0; I < ncx; ++I)
            for (int i = ax.start[I]; i < ax.start[I] + ax.width[I]; ++i) {
                const TileAxis::Locate& Lx = ax.locate_cell(i);
                double gw = 1.0 / (Lx.dk * Ly.dk);
                const double s = Lx.t, dx = Lx.dk, t = Ly.t, dy = Ly.dk;
                add(I, J, Lx.k0, Ly.k0, -2.0 * gw * (dx - s) * (dy - t));
                add(I, J, Lx.k1, Ly.k0, -2.0 * gw * s * (dy - t));
                add(I, J, Lx.k0, Ly.k1, -2.0 * gw * (dx - s) * t);
                add(I, J, Lx.k1, Ly.k1, -2.0 * gw * s * t);
            }
    };
    dclose_x(Side::west);
    dclose_x(Side::east);
    dclose_y(Side::south);
    dclose_y(Side::north);
    return op;
}

// ---------------------------------------------------------------------------
// Re-discretized 5-point operator at the coarse spacing (flux form: neighbor
// coefficient = shared face length / center distance, in fine-cell units).

template <typename T>
CoarseOperator<T> build_gmg_operator(const GridSpec& g) {
    if (g.tile < 2)
        throw std::invalid_argument("gmg operator: tile must be >= 2");
    auto bc = pressure_bc(g);
    TileAxis ax(g.nx, g.tile, bc[int(Side::west)] == PressureBcKind::periodic);
    TileAxis ay(g.ny, g.tile, bc[int(Side::south)] == PressureBcKind::periodic);
    if (ax.nc < 2 || ay.nc < 2)
        throw std::invalid_argument("gmg operator: need at least 2 coarse cells per axis");

    CoarseOperator<T> op;
    op.init(ax, ay);
    op.five_point = true;
    op.singular = pressure_singular(bc);

    for (int J = 0; J < op.ncy; ++J)
        for (int I = 0; I < op.ncx; ++I) {
            size_t k = op.idx(I, J);
            double face_x = ay.width[J];  // length of E/W faces
            double face_y = ax.width[I];  // length of N/S faces
            double diag = 0.0;
            auto couple = [&](int slot, double face, double dist) {
                double c = face / dist;
                op.w[slot][k] += T(c);
                diag += c;
            };
            auto close_dirichlet = [&](Side side, double face, double half_w) {
                if (bc[int(side)] == PressureBcKind::dirichlet_zero)
                    diag += face / half_w;  // ghost mirrored to -inner
            };
            // East
            if (I < op.ncx - 1) couple(1, face_x, ax.rect[I]);
            else if (ax.periodic) couple(1, face_x, ax.rect_wrap);
            else close_dirichlet(Side::east, face_x, ax.width[I] / 2.0);
            // West
            if (I > 0) couple(2, face_x, ax.rect[I - 1]);
            else if (ax.periodic) couple(2, face_x, ax.rect_wrap);
            else close_dirichlet(Side::west, face_x, ax.width[I] / 2.0);
            // North
            if (J < op.ncy - 1) couple(3, face_y, ay.rect[J]);
            else if (ay.periodic) couple(3, face_y, ay.rect_wrap);
            else close_dirichlet(Side::north, face_y, ay.width[J] / 2.0);
            // South
            if (J > 0) couple(4, face_y, ay.rect[J - 1]);
            else if (ay.periodic) couple(4, face_y, ay.rect_wrap);
            else close_dirichlet(Side::south, face_y, ay.width[J] / 2.0);
            op.w[0][k] = T(-diag);
        }
    return op;
}

// ---------------------------------------------------------------------------
// Summed (additive-correction) hierarchy: factor-2 agglomeration of rows.

/// The fine flux-form matrix expressed in the per-cell stencil format, as the
/// root of the agglomeration chain (ax/ay are degenerate tile-1 axes).
template <typename T>
CoarseOperator<T> fine_as_operator(const GridSpec& g) {
    auto bc = pressure_bc(g);
    bool px = bc[int(Side::west)] == PressureBcKind::periodic;
    bool py = bc[int(Side::south)] == PressureBcKind::periodic;
    CoarseOperator<T> op;
    op.init(TileAxis(g.nx, 1, px), TileAxis(g.ny, 1, py));
    op.five_point = true;
    op.singular = pressure_singular(bc);
    auto closure = [&](Side s) -> double {
        switch (bc[int(s)]) {
            case PressureBcKind::neumann: return 0.0;
            case PressureBcKind::dirichlet_zero: return 2.0;
            case PressureBcKind::periodic: return 1.0;
        }
        return 0.0;
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            size_t k = op.idx(i, j);
            double diag = 0.0;
            auto face = [&](int slot, bool open, Side s) {
                if (open) {
                    op.w[slot][k] = T(1);
                    diag += 1.0;
                } else if (bc[int(s)] == PressureBcKind::periodic) {
                    op.w[slot][k] = T(1);
                    diag += 1.0;
                } else {
                    diag += closure(s);
                }
            };
            face(1, i < g.nx - 1, Side::east);
            face(2, i > 0, Side::west);
            face(3, j < g.ny - 1, Side::north);
            face(4, j > 0, Side::south);
            op.w[0][k] = T(-diag);
        }
    return op;
}

/// One factor-2 agglomeration step: parent rows are sums of their (up to 4)
/// child rows with unknowns merged per block — intra-block couplings fold into
/// the diagonal, inter-block ones land on the parent's 5-point neighbors.
template <typename T>
CoarseOperator<T> agglomerate2(const CoarseOperator<T>& f) {
    if (!f.five_point)
        throw std::invalid_argument("agglomerate2: expected a 5-point level");
    TileAxis bx(f.ncx, 2, f.periodic_x);
    TileAxis by(f.ncy, 2, f.periodic_y);
    CoarseOperator<T> c;
    c.init(bx, by);
    c.five_point = true;
    c.singular = f.singular;
    for (int j = 0; j < f.ncy; ++j) {
        int BJ = by.parent(j);
        for (int i = 0; i < f.ncx; ++i) {
            int BI = bx.parent(i);
            size_t kf = f.idx(i, j);
            size_t kc = c.idx(BI, BJ);
            for (int sl = 0; sl < 5; ++sl) {
                T wgt = f.w[sl][kf];
                if (wgt == T(0)) continue;
                int ii = i + slot_di[sl], jj = j + slot_dj[sl];
                if (f.periodic_x) ii = (ii + f.ncx) % f.ncx;
                if (f.periodic_y) jj = (jj + f.ncy) % f.ncy;
                if (ii < 0 || ii >= f.ncx || jj < 0 || jj >= f.ncy) continue;
                int di = wrap_delta(bx.parent(ii), BI, c.ncx, c.periodic_x);
                int dj = wrap_delta(by.parent(jj), BJ, c.ncy, c.periodic_y);
                c.w[slot_index(di, dj)][kc] += wgt;
            }
        }
    }
    return c;
}

template <typename T>
struct MgHierarchy {
    Scheme scheme = Scheme::ismg;
    // ISMG/GMG: exactly one entry (the coarse level). ACM: depth-1 entries,
    // finest-to-coarsest; entry k sits 2^(k+1) h deep.
    std::vector<CoarseOperator<T>> levels;
};

template <typename T>
MgHierarchy<T> build_acm_hierarchy(const GridSpec& g, int depth) {
    if (depth < 2)
        throw std::invalid_argument("acm hierarchy: depth must be >= 2");
    MgHierarchy<T> h;
    h.scheme = Scheme::acm;
    CoarseOperator<T> cur = fine_as_operator<T>(g);
    for (int k = 1; k < depth; ++k) {
        if (cur.ncx < 2 || cur.ncy < 2)
            throw std::invalid_argument("acm hierarchy: grid too small for depth");
        cur = agglomerate2(cur);
        h.levels.push_back(cur);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Transfers.

/// Coarse cell = plain sum of its tile's fine values (no averaging).
template <typename T>
void restrict_sum(const ScalarField<T>& fine, const TileAxis& ax, const TileAxis& ay,
                  ScalarField<T>& coarse) {
    coarse.fill_interior(T(0));
    for (int j = 0; j < ay.n; ++j) {
        const T* fr = fine.row(j);
        T* cr = coarse.row(ay.parent(j));
        for (int i = 0; i < ax.n; ++i) cr[ax.parent(i)] += fr[i];
    }
}

/// Add the bilinear interpolant of the coarse field (quadrant rectangles,
/// one-sided near non-periodic edges, wraparound on periodic axes) into the
/// fine field's interior.
template <typename T>
void prolongate_bilinear(const ScalarField<T>& coarse, const TileAxis& ax, const TileAxis& ay,
                         ScalarField<T>& fine) {
    for (int j = 0; j < ay.n; ++j) {
        const TileAxis::Locate& Ly = ay.locate_cell(j);
        const T* c0 = coarse.row(Ly.k0);
        const T* c1 = coarse.row(Ly.k1);
        const double t = Ly.t, dy = Ly.dk;
        T* fr = fine.row(j);
        for (int i = 0; i < ax.n; ++i) {
            const TileAxis::Locate& Lx = ax.locate_cell(i);
            const double s = Lx.t, dx = Lx.dk;
            double val = ((dx - s) * ((dy - t) * double(c0[Lx.k0]) + t * double(c1[Lx.k0])) +
                          s * ((dy - t) * double(c0[Lx.k1]) + t * double(c1[Lx.k1]))) /
                         (dx * dy);
            fr[i] += T(val);
        }
    }
}

/// Add each coarse value unchanged into all fine cells of its tile.
template <typename T>
void prolongate_constant(const ScalarField<T>& coarse, const TileAxis& ax, const TileAxis& ay,
                         ScalarField<T>& fine) {
    for (int j = 0; j < ay.n; ++j) {
        const T* cr = coarse.row(ay.parent(j));
        T* fr = fine.row(j);
        for (int i = 0; i < ax.n; ++i) fr[i] += cr[ax.parent(i)];
    }
}

// ---------------------------------------------------------------------------
// Relaxation on a stored stencil. Neighbor indexing is direct (wrapped on
// periodic axes); out-of-range neighbors only ever carry zero weight.

template <typename T>
inline T coarse_neighbor(const CoarseOperator<T>& op, const ScalarField<T>& x, int I, int J,
                         int sl) {
    int II = I + slot_di[sl], JJ = J + slot_dj[sl];
    if (op.periodic_x) II = (II + op.ncx) % op.ncx;
    if (op.periodic_y) JJ = (JJ + op.ncy) % op.ncy;
    if (II < 0 || II >= op.ncx || JJ < 0 || JJ >= op.ncy) return T(0);
    return x(II, JJ);
}

/// Max-norm residual r = b - A x; optionally stores the residual field.
template <typename T>
T coarse_residual(const CoarseOperator<T>& op, const ScalarField<T>& x, const ScalarField<T>& b,
                  ScalarField<T>* out = nullptr) {
    const int ns = op.five_point ? 5 : 9;
    T rmax = 0;
    for (int J = 0; J < op.ncy; ++J)
        for (int I = 0; I < op.ncx; ++I) {
            size_t k = op.idx(I, J);
            T ax = op.w[0][k] * x(I, J);
            for (int sl = 1; sl < ns; ++sl) {
                T wgt = op.w[sl][k];
                if (wgt != T(0)) ax += wgt * coarse_neighbor(op, x, I, J, sl);
            }
            T r = b(I, J) - ax;
            if (out) (*out)(I, J) = r;
            rmax = std::max(rmax, std::abs(r));
        }
    return rmax;
}

/// One lexicographic (serial) Gauss-Seidel sweep — a single synchronization.
template <typename T>
void gs_sweep_lex(const CoarseOperator<T>& op, ScalarField<T>& x, const ScalarField<T>& b) {
    const int ns = op.five_point ? 5 : 9;
    for (int J = 0; J < op.ncy; ++J)
        for (int I = 0; I < op.ncx; ++I) {
            size_t k = op.idx(I, J);
            T s = 0;
            for (int sl = 1; sl < ns; ++sl) {
                T wgt = op.w[sl][k];
                if (wgt != T(0)) s += wgt * coarse_neighbor(op, x, I, J, sl);
            }
            if (op.w[0][k] == T(0))
                throw std::domain_error("coarsening: singular stencil row");
            x(I, J) = (b(I, J) - s) / op.w[0][k];
        }
}

/// One red-black sweep on a stored 5-point level (two synchronizations) —
/// used on the intermediate levels of the summed hierarchy.
template <typename T>
void rbgs_sweep(const CoarseOperator<T>& op, ScalarField<T>& x, const ScalarField<T>& b) {
    if (!op.five_point)
        throw std::invalid_argument("rbgs_sweep: red-black relaxation expects a 5-point level");
    for (int color = 0; color < 2; ++color)
        for (int J = 0; J < op.ncy; ++J)
            for (int I = (color + J) & 1; I < op.ncx; I += 2) {
                size_t k = op.idx(I, J);
                T s = 0;
                for (int sl = 1; sl < 5; ++sl) {
                    T wgt = op.w[sl][k];
                    if (wgt != T(0)) s += wgt * coarse_neighbor(op, x, I, J, sl);
                }
                if (op.w[0][k] == T(0))
                    throw std::domain_error("coarsening: singular stencil row");
                x(I, J) = (b(I, J) - s) / op.w[0][k];
            }
}

/// Mean-anchor a coarse iterate on singular levels (weighted by nothing —
/// plain mean, mirroring the fine-level anchor).
template <typename T>
void anchor_mean(const CoarseOperator<T>& op, ScalarField<T>& x) {
    if (op.singular) x.shift_interior(-x.interior_mean());
}

}  // namespace ismg
