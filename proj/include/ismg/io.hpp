/// @file io.hpp
/// Snapshot and diagnostic output: legacy ASCII VTK (structured points, cell
/// centers as points), flat CSV field dumps, and coarse-operator row dumps.

#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "coarsening.hpp"
#include "field.hpp"
#include "grid.hpp"

namespace ismg {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("io: cannot open '" + path + "' for writing");
    return os;
}

namespace detail {
inline void put_g(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    os << buf;
}
}  // namespace detail

/// Flat CSV: header line `nx,ny,h`, its values, then one row of interior
/// values per grid row (south to north), row-major.
template <typename T>
void write_field_csv(const ScalarField<T>& f, const GridSpec& g, const std::string& path) {
    std::ofstream os = open_output(path);
    os << "nx,ny,h\n" << g.nx << ',' << g.ny << ',';
    detail::put_g(os, g.h);
    os << '\n';
    for (int j = 0; j < g.ny; ++j) {
        const T* r = f.row(j);
        for (int i = 0; i < g.nx; ++i) {
            if (i) os << ',';
            detail::put_g(os, double(r[i]));
        }
        os << '\n';
    }
    if (!os) throw std::runtime_error("io: write failed for '" + path + "'");
}

/// Legacy VTK structured points over cell centers: pressure scalar plus the
/// face-averaged velocity vector.
template <typename T>
void write_vtk(const ScalarField<T>& p, const MacVelocity<T>& vel, const GridSpec& g,
               const std::string& path) {
    std::ofstream os = open_output(path);
    os << "# vtk DataFile Version 3.0\n";
    os << "ismg snapshot\n";
    os << "ASCII\n";
    os << "DATASET STRUCTURED_POINTS\n";
    os << "DIMENSIONS " << g.nx << ' ' << g.ny << " 1\n";
    os << "ORIGIN ";
    detail::put_g(os, 0.5 * g.h);
    os << ' ';
    detail::put_g(os, 0.5 * g.h);
    os << " 0\n";
    os << "SPACING ";
    detail::put_g(os, g.h);
    os << ' ';
    detail::put_g(os, g.h);
    os << " 1\n";
    os << "POINT_DATA " << size_t(g.nx) * g.ny << '\n';
    os << "SCALARS pressure double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (int j = 0; j < g.ny; ++j) {
        const T* r = p.row(j);
        for (int i = 0; i < g.nx; ++i) {
            detail::put_g(os, double(r[i]));
            os << '\n';
        }
    }
    os << "VECTORS velocity double\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double uc = 0.5 * (double(vel.u(i, j)) + double(vel.u(i + 1, j)));
            double vc = 0.5 * (double(vel.v(i, j)) + double(vel.v(i, j + 1)));
            detail::put_g(os, uc);
            os << ' ';
            detail::put_g(os, vc);
            os << " 0\n";
        }
    if (!os) throw std::runtime_error("io: write failed for '" + path + "'");
}

/// Debug dump of the per-cell stencil rows for oracle comparison.
template <typename T>
void write_operator_csv(const CoarseOperator<T>& op, std::ostream& os) {
    os << "ci,cj,C,E,W,N,S,NE,NW,SE,SW\n";
    for (int J = 0; J < op.ncy; ++J)
        for (int I = 0; I < op.ncx; ++I) {
            os << I << ',' << J;
            for (int sl = 0; sl < 9; ++sl) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", double(op.w[sl][op.idx(I, J)]));
                os << ',' << buf;
            }
            os << '\n';
        }
}

template <typename T>
void write_operator_csv(const CoarseOperator<T>& op, const std::string& path) {
    std::ofstream os = open_output(path);
    write_operator_csv(op, os);
    if (!os) throw std::runtime_error("io: write failed for '" + path + "'");
}

}  // namespace ismg
