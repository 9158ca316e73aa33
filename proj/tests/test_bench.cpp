#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "ismg/bench.hpp"

using namespace ismg;

TEST_CASE("benchmark setups pin the boundary data", "[bench]") {
    BenchmarkCase shear = setup_shear_cavity();
    CHECK(shear.grid.nx == 500);
    CHECK(shear.grid.ny == 500);
    CHECK(shear.grid.side(Side::west).kind == BcKind::dirichlet_velocity);
    CHECK(shear.grid.side(Side::west).v_wall == Catch::Approx(0.1));
    CHECK(shear.grid.side(Side::east).v_wall == Catch::Approx(0.1));
    CHECK(shear.grid.side(Side::south).u_wall == Catch::Approx(0.1));
    CHECK(shear.grid.side(Side::north).u_wall == Catch::Approx(-0.1));
    CHECK(shear.nu == Catch::Approx(0.1));
    CHECK(shear.dt == Catch::Approx(1.0));
    CHECK(pressure_singular(pressure_bc(shear.grid)));

    BenchmarkCase lid = setup_lid_cavity();
    CHECK(lid.grid.nx == 256);
    CHECK(lid.grid.side(Side::north).u_wall == Catch::Approx(0.1));
    CHECK(lid.grid.side(Side::south).u_wall == 0.0);
    CHECK(lid.nu == Catch::Approx(0.0256));
    CHECK(lid.steps == 40000);
    CHECK(lid.t_max == Catch::Approx(40000.0));
    CHECK(lid.steady_tol == Catch::Approx(1e-10));
    BenchmarkCase lid128 = setup_lid_cavity(128);
    CHECK(lid128.nu == Catch::Approx(0.0128));

    BenchmarkCase jet = setup_jet();
    CHECK(jet.grid.nx == 250);
    CHECK(jet.grid.ny == 500);
    CHECK(jet.grid.side(Side::south).kind == BcKind::inlet);
    CHECK(jet.grid.side(Side::south).inlet_start == 117);
    CHECK(jet.grid.side(Side::south).inlet_width == 16);
    CHECK(jet.grid.side(Side::south).v_inflow == Catch::Approx(0.1));
    CHECK(jet.grid.side(Side::north).kind == BcKind::symmetry_fixed_pressure);
    CHECK(jet.nu == Catch::Approx(0.01));
    CHECK_FALSE(pressure_singular(pressure_bc(jet.grid)));

    BenchmarkCase ch = setup_channel_jets();
    CHECK(ch.grid.side(Side::west).kind == BcKind::periodic);
    CHECK(ch.grid.side(Side::east).kind == BcKind::periodic);
    CHECK(ch.grid.side(Side::south).inlet_start == 87);
    CHECK(ch.grid.side(Side::south).inlet_width == 25);
    CHECK(ch.grid.side(Side::north).kind == BcKind::symmetry_fixed_pressure);
    CHECK_NOTHROW(ch.grid.validate());
}

TEST_CASE("inlet span carries the prescribed flux", "[bench]") {
    BenchmarkCase jet = setup_jet(20, 12, 0.1, 4);  // inlet faces i in [8, 12)
    MacVelocity<double> vel(20, 12);
    apply_velocity_bc(vel, jet.grid);
    double flux = 0.0;
    for (int i = 0; i < 20; ++i) flux += double(vel.v(i, 0)) * jet.grid.h;
    CHECK(flux == Catch::Approx(0.4));
    CHECK(vel.v(7, 0) == 0.0);
    CHECK(vel.v(8, 0) == Catch::Approx(0.1));
    CHECK(vel.v(11, 0) == Catch::Approx(0.1));
    CHECK(vel.v(12, 0) == 0.0);
}

TEST_CASE("quadratic refinement recovers parabola vertices", "[bench]") {
    std::vector<double> f(7);
    for (size_t k = 0; k < f.size(); ++k) {
        double x = double(k) - 3.4;
        f[k] = 2.0 - 0.5 * x * x;
    }
    size_t peak = 3;  // nearest sample to the vertex
    CHECK(quadratic_refine(f, peak) == Catch::Approx(2.0).margin(1e-12));
    CHECK(quadratic_refine(f, 0) == f[0]);             // edge guard
    CHECK(quadratic_refine(f, f.size() - 1) == f.back());
    std::vector<double> lin = {1.0, 2.0, 3.0};
    CHECK(quadratic_refine(lin, 1) == 2.0);            // zero curvature guard
}

TEST_CASE("centerline extrema are read off the mid-row and mid-column", "[bench]") {
    GridSpec g;
    g.nx = g.ny = 8;
    FluidState<double> st(g);
    for (int j = 0; j < 8; ++j) {
        double x = double(j) - 3.2;
        st.vel.u(4, j) = -0.05 + 0.003 * x * x;  // min -0.05 at j = 3.2
    }
    for (int i = 0; i < 8; ++i) {
        double x = double(i) - 5.6;
        st.vel.v(i, 4) = 0.03 - 0.002 * x * x;  // max 0.03 at i = 5.6
    }
    CavityExtrema e = cavity_extrema(st, g, 0.1);
    CHECK(e.u_ext == Catch::Approx(0.5).margin(1e-12));
    CHECK(e.v_max == Catch::Approx(0.3).margin(1e-12));
    // the signed minimum sits on the clamped first sample
    CHECK(e.v_min == Catch::Approx((0.03 - 0.002 * 5.6 * 5.6) / 0.1).margin(1e-12));
}

TEST_CASE("case runner honors step, time, and steadiness limits", "[bench]") {
    CycleConfig cfg;
    cfg.scheme = Scheme::ismg;
    cfg.tile = 4;
    cfg.tol_fine = 1e-8;
    cfg.tol_coarse = 1e-7;

    BenchmarkCase bc = setup_shear_cavity(16, 0.1);
    bc.steps = 100;
    bc.t_max = 5.0;
    long hook_calls = 0;
    CaseResult<double> res = run_case<double>(
        bc, cfg, [&](const FluidState<double>&, const ConvergenceReport& rep) {
            ++hook_calls;
            REQUIRE(rep.converged);
        });
    CHECK(res.steps_run == 5);
    CHECK(hook_calls == 5);
    CHECK(res.state.t == Catch::Approx(5.0));
    CHECK(res.all_converged);
    CHECK(res.metrics.rows.size() == 5);
    CHECK(res.state.vel.max_abs() > 0.0);

    // quiescent box: nothing moves, so the steadiness test trips immediately
    GridSpec still;
    still.nx = still.ny = 16;
    BenchmarkCase quiet;
    quiet.name = "quiet";
    quiet.grid = still;
    quiet.steps = 50;
    quiet.steady_tol = 1e-12;
    CaseResult<double> qres = run_case<double>(quiet, cfg);
    CHECK(qres.steps_run == 1);
    CHECK(qres.state.vel.max_abs() == 0.0);

    // seeded runs start from a small perturbation
    quiet.seed = 77;
    quiet.steps = 0;
    CaseResult<double> pres = run_case<double>(quiet, cfg);
    CHECK(pres.state.vel.max_abs() > 0.0);
    CHECK(pres.state.vel.max_abs() <= 1e-6);
}

TEST_CASE("unconverged steps are recorded and the run continues", "[bench]") {
    BenchmarkCase bc = setup_shear_cavity(16, 0.1);
    bc.steps = 3;
    CycleConfig cfg;
    cfg.scheme = Scheme::plain_gs;
    cfg.tol_fine = 1e-14;
    cfg.max_total_sweeps = 2;
    CaseResult<double> res = run_case<double>(bc, cfg);
    CHECK(res.steps_run == 3);
    CHECK_FALSE(res.all_converged);
    REQUIRE(res.metrics.rows.size() == 3);
    CHECK_FALSE(res.metrics.rows.front().converged);
}

TEST_CASE("sweep cells expand in deterministic order", "[bench]") {
    SweepAxes axes;
    axes.schemes = {Scheme::plain_gs, Scheme::ismg, Scheme::acm};
    axes.tiles = {4, 8};
    axes.depths = {2};
    axes.tol_coarse = {1e-5, 1e-4};
    std::vector<SweepRow> cells = sweep_cells(axes);
    REQUIRE(cells.size() == 7);
    CHECK(cells[0].scheme == Scheme::plain_gs);
    CHECK(cells[0].tile_or_depth == 0);
    CHECK(cells[0].tol_coarse == 0.0);
    CHECK(cells[1].scheme == Scheme::ismg);
    CHECK(cells[1].tile_or_depth == 4);
    CHECK(cells[1].tol_coarse == Catch::Approx(1e-5));
    CHECK(cells[2].tol_coarse == Catch::Approx(1e-4));
    CHECK(cells[3].tile_or_depth == 8);
    CHECK(cells[5].scheme == Scheme::acm);
    CHECK(cells[5].tile_or_depth == 2);
    CHECK(cells[6].tol_coarse == Catch::Approx(1e-4));

    CycleConfig plain_cfg = sweep_cell_config(axes, cells[0]);
    CHECK(plain_cfg.scheme == Scheme::plain_gs);
    CHECK(plain_cfg.tol_coarse == Catch::Approx(axes.tol_fine));
    CycleConfig acm_cfg = sweep_cell_config(axes, cells[5]);
    CHECK(acm_cfg.depth == 2);
}

TEST_CASE("sweep results do not depend on the worker count", "[bench]") {
    BenchmarkCase bc = setup_shear_cavity(16, 0.1);
    bc.steps = 4;
    bc.window = 4;
    SweepAxes axes;
    axes.schemes = {Scheme::plain_gs, Scheme::ismg, Scheme::acm};
    axes.tiles = {2, 4};
    axes.depths = {2, 3};
    axes.tol_coarse = {1e-5};
    axes.tol_fine = 1e-6;

    std::vector<SweepRow> serial = run_sweep<double>(bc, axes, 1);
    std::vector<SweepRow> parallel = run_sweep<double>(bc, axes, 4);
    REQUIRE(serial.size() == parallel.size());
    for (size_t k = 0; k < serial.size(); ++k) {
        CAPTURE(k);
        CHECK(serial[k].scheme == parallel[k].scheme);
        CHECK(serial[k].ncc_f == parallel[k].ncc_f);       // bitwise: same work order
        CHECK(serial[k].ncc_c == parallel[k].ncc_c);
        CHECK(serial[k].ncc_t == parallel[k].ncc_t);
        CHECK(serial[k].n_lap == parallel[k].n_lap);
        CHECK(serial[k].converged == parallel[k].converged);
        CHECK(serial[k].converged);
    }
    CHECK(serial[0].ncc_c == 0.0);  // plain never touches a coarse grid

    // per-cell metrics files land in the requested directory
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ismg_sweep_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    run_sweep<double>(bc, axes, 2, dir.string());
    CHECK(fs::exists(dir / "metrics_plain_0_0.csv"));
    CHECK(fs::exists(dir / "metrics_ismg_2_1e-05.csv"));
    CHECK(fs::exists(dir / "metrics_acm_3_1e-05.csv"));
    fs::remove_all(dir);
}

TEST_CASE("sweep table serializes with a fixed header", "[bench]") {
    std::vector<SweepRow> rows(2);
    rows[0].scheme = Scheme::plain_gs;
    rows[0].ncc_f = 123.25;
    rows[0].ncc_t = 123.25;
    rows[0].n_lap = 61.625;
    rows[1].scheme = Scheme::ismg;
    rows[1].tile_or_depth = 16;
    rows[1].tol_coarse = 1e-5;
    rows[1].ncc_f = 10.5;
    rows[1].ncc_c = 8.0;
    rows[1].ncc_t = 29.0;
    rows[1].n_lap = 5.5;
    rows[1].converged = false;
    std::ostringstream os;
    write_sweep_csv(rows, os);
    CHECK(os.str() ==
          "scheme,tile_or_depth,tol_coarse,NCC_f,NCC_c,NCC_t,N_Lap,converged\n"
          "plain,0,0,123.25,0,123.25,61.625,true\n"
          "ismg,16,1e-05,10.5,8,29,5.5,false\n");
}
