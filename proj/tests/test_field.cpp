#include <catch2/catch_amalgamated.hpp>

#include "ismg/field.hpp"
#include "ismg/grid.hpp"

using namespace ismg;

namespace {

GridSpec cavity(int nx, int ny) {
    GridSpec g;
    g.nx = nx;
    g.ny = ny;
    return g;
}

}  // namespace

TEST_CASE("padded dims cover the interior with the last short tile", "[field]") {
    GridSpec g = cavity(500, 500);
    g.tile = 16;
    PaddedDims p = padded_dims(g);
    CHECK(p.padded_nx == 512);
    CHECK(p.padded_ny == 512);
    CHECK(p.last_tile_w == 4);
    CHECK(p.last_tile_h == 4);

    g = cavity(512, 512);
    p = padded_dims(g);
    CHECK(p.padded_nx == 512);
    CHECK(p.last_tile_w == 16);

    g = cavity(5, 3);
    g.tile = 8;
    p = padded_dims(g);
    CHECK(p.padded_nx == 8);
    CHECK(p.padded_ny == 8);
    CHECK(p.last_tile_w == 5);
    CHECK(p.last_tile_h == 3);
}

TEST_CASE("grid validation rejects inconsistent setups", "[field]") {
    GridSpec g = cavity(8, 8);
    CHECK_NOTHROW(g.validate());

    g.side(Side::west) = BoundaryCondition::wrap();
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);  // unpaired periodic
    g.side(Side::east) = BoundaryCondition::wrap();
    CHECK_NOTHROW(g.validate());

    g = cavity(8, 8);
    g.side(Side::south) = BoundaryCondition::inflow(0.1, 6, 4);  // spills past nx
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.side(Side::south) = BoundaryCondition::inflow(0.1, 2, 4);
    CHECK_NOTHROW(g.validate());

    g = cavity(8, 8);
    g.tile = 1;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);

    g = cavity(0, 8);
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("pressure closures follow the velocity boundary kinds", "[field]") {
    GridSpec g = cavity(8, 8);
    g.side(Side::north) = BoundaryCondition::symmetry(0.0);
    g.side(Side::south) = BoundaryCondition::inflow(0.1, 2, 4);
    auto pbc = pressure_bc(g);
    CHECK(pbc[size_t(Side::west)] == PressureBcKind::neumann);
    CHECK(pbc[size_t(Side::south)] == PressureBcKind::neumann);
    CHECK(pbc[size_t(Side::north)] == PressureBcKind::dirichlet_zero);
    CHECK_FALSE(pressure_singular(pbc));

    GridSpec box = cavity(8, 8);
    CHECK(pressure_singular(pressure_bc(box)));

    box.side(Side::west) = BoundaryCondition::wrap();
    box.side(Side::east) = BoundaryCondition::wrap();
    auto pbc2 = pressure_bc(box);
    CHECK(pbc2[size_t(Side::west)] == PressureBcKind::periodic);
    CHECK(pressure_singular(pbc2));
}

TEST_CASE("scalar ghost fill: copy, negate, wrap, corners", "[field]") {
    ScalarField<double> f(3, 2);
    int v = 1;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 3; ++i) f(i, j) = v++;
    // interior:  j=1: 4 5 6
    //            j=0: 1 2 3
    std::array<PressureBcKind, 4> bc = {PressureBcKind::neumann, PressureBcKind::dirichlet_zero,
                                        PressureBcKind::neumann, PressureBcKind::neumann};
    apply_scalar_bc(f, bc);
    CHECK(f(-1, 0) == 1.0);    // west neumann copies
    CHECK(f(3, 0) == -3.0);    // east dirichlet negates
    CHECK(f(0, -1) == 1.0);    // south neumann
    CHECK(f(0, 2) == 4.0);     // north neumann
    CHECK(f(3, 2) == -6.0);    // corner: north copy of the east ghost -f(2,1)

    // interior untouched
    CHECK(f(0, 0) == 1.0);
    CHECK(f(2, 1) == 6.0);

    // idempotent
    ScalarField<double> g = f;
    apply_scalar_bc(g, bc);
    CHECK(g.data == f.data);
}

TEST_CASE("scalar ghost fill wraps periodically", "[field]") {
    ScalarField<double> f(4, 3);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 4; ++i) f(i, j) = 10.0 * j + i;
    std::array<PressureBcKind, 4> bc = {PressureBcKind::periodic, PressureBcKind::periodic,
                                        PressureBcKind::dirichlet_zero,
                                        PressureBcKind::dirichlet_zero};
    apply_scalar_bc(f, bc);
    CHECK(f(-1, 1) == f(3, 1));
    CHECK(f(4, 2) == f(0, 2));
    CHECK(f(1, -1) == -f(1, 0));
    CHECK(f(1, 3) == -f(1, 2));
    // corner ghost: south rule over wrapped west column
    CHECK(f(-1, -1) == -f(3, 0));
}

TEST_CASE("scalar interior helpers", "[field]") {
    ScalarField<double> f(4, 2);
    f.fill_interior(2.0);
    f(1, 1) = -6.0;
    CHECK(f.interior_sum() == Catch::Approx(2.0 * 8 - 8.0));
    CHECK(f.interior_mean() == Catch::Approx(1.0));
    CHECK(f.interior_max_abs() == 6.0);
    f.shift_interior(-1.0);
    CHECK(f.interior_mean() == Catch::Approx(0.0));
    CHECK(f(-1, 0) == 0.0);  // ghosts untouched by interior ops
}

TEST_CASE("velocity BCs: moving walls, inlet span, symmetry", "[field]") {
    GridSpec g = cavity(6, 4);
    g.side(Side::north) = BoundaryCondition::moving_wall(0.25, 0.0);
    g.side(Side::south) = BoundaryCondition::inflow(0.1, 2, 3);
    g.side(Side::east) = BoundaryCondition::symmetry(0.0);
    g.validate();

    MacVelocity<double> vel(6, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i <= 6; ++i) vel.u(i, j) = 0.01 * (i + 10 * j) + 0.005;
    for (int j = 0; j <= 4; ++j)
        for (int i = 0; i < 6; ++i) vel.v(i, j) = -0.01 * (i + 10 * j) - 0.002;
    apply_velocity_bc(vel, g);

    // wall-normal faces
    for (int j = 0; j < 4; ++j) {
        CHECK(vel.u(0, j) == 0.0);             // west no-slip
        CHECK(vel.u(6, j) == vel.u(5, j));     // east symmetry mirrors the inner face
    }
    for (int i = 0; i < 6; ++i) {
        double want = (i >= 2 && i < 5) ? 0.1 : 0.0;
        CHECK(vel.v(i, 0) == want);            // inlet span on the south wall
        CHECK(vel.v(i, 4) == 0.0);             // north wall: v = 0
    }

    // tangential ghosts
    for (int i = 0; i <= 6; ++i) {
        CHECK(vel.u(i, 4) == Catch::Approx(2.0 * 0.25 - vel.u(i, 3)));  // moving lid
        CHECK(vel.u(i, -1) == Catch::Approx(-vel.u(i, 0)));             // inlet wall is no-slip
    }
    for (int j = 0; j <= 4; ++j) {
        CHECK(vel.v(-1, j) == Catch::Approx(-vel.v(0, j)));   // west no-slip
        CHECK(vel.v(6, j) == Catch::Approx(vel.v(5, j)));     // east symmetry
    }

    // idempotent
    MacVelocity<double> again = vel;
    apply_velocity_bc(again, g);
    CHECK(again.u_data == vel.u_data);
    CHECK(again.v_data == vel.v_data);
}

TEST_CASE("velocity BCs: periodic images", "[field]") {
    GridSpec g = cavity(4, 3);
    g.side(Side::west) = BoundaryCondition::wrap();
    g.side(Side::east) = BoundaryCondition::wrap();
    g.validate();

    MacVelocity<double> vel(4, 3);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i <= 4; ++i) vel.u(i, j) = i + 10.0 * j;
    for (int j = 0; j <= 3; ++j)
        for (int i = 0; i < 4; ++i) vel.v(i, j) = -(i + 10.0 * j);
    apply_velocity_bc(vel, g);

    for (int j = 0; j < 3; ++j) {
        CHECK(vel.u(4, j) == vel.u(0, j));
        CHECK(vel.u(-1, j) == vel.u(3, j));
        CHECK(vel.u(5, j) == vel.u(1, j));
    }
    for (int j = 0; j <= 3; ++j) {
        CHECK(vel.v(-1, j) == vel.v(3, j));
        CHECK(vel.v(4, j) == vel.v(0, j));
    }

    MacVelocity<double> again = vel;
    apply_velocity_bc(again, g);
    CHECK(again.u_data == vel.u_data);
    CHECK(again.v_data == vel.v_data);
}
