#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ismg/coarsening.hpp"
#include "ismg/io.hpp"
#include "ismg/metrics.hpp"

using namespace ismg;

TEST_CASE("sweep accounting: sync and Laplacian-equivalent costs", "[metrics]") {
    RunMetrics m(256);  // 16x16 fine grid

    m.record_sweep(LevelKind::fine, 5, 256);
    CHECK(m.current.fine_sweeps == 1);
    CHECK(m.current.sync_fine == 2);  // red-black: two synchronizations
    CHECK(m.current.sync_coarse == 0);
    CHECK(m.current.lap_equiv == Catch::Approx(1.0));

    // one 9-point sweep over the single 16x16-tile coarse cell
    m.record_sweep(LevelKind::coarse, 9, 1);
    CHECK(m.current.coarse_sweeps == 1);
    CHECK(m.current.sync_coarse == 1);  // lexicographic: one synchronization
    CHECK(m.current.lap_equiv == Catch::Approx(1.0 + 0.00703125));

    m.record_restriction();
    m.record_prolongation();
    CHECK(m.current.restrictions == 1);
    CHECK(m.current.prolongations == 1);
}

TEST_CASE("NCC_t combines two fine syncs per sweep with one coarse", "[metrics]") {
    RunMetrics m(64);
    for (int k = 0; k < 10; ++k) m.record_sweep(LevelKind::fine, 5, 64);
    for (int k = 0; k < 8; ++k) m.record_sweep(LevelKind::coarse, 9, 4);
    CHECK(m.current.sync_total() == 28);
    m.close_timestep(1, 1e-7, true);
    CHECK(m.current.fine_sweeps == 0);  // counters reset after sealing
    REQUIRE(m.rows.size() == 1);
    CHECK(m.rows[0].sync_fine == 20);
    CHECK(m.rows[0].sync_coarse == 8);
    CHECK(m.rows[0].step == 1);
}

TEST_CASE("window means cover the trailing steps only", "[metrics]") {
    RunMetrics m(100);
    m.record_sweep(LevelKind::fine, 5, 100);  // step 1: 1 sweep
    m.close_timestep(1, 1e-8, true);
    for (int k = 0; k < 3; ++k) m.record_sweep(LevelKind::fine, 5, 100);
    m.record_sweep(LevelKind::coarse, 5, 25);
    m.close_timestep(2, 2e-8, false);  // step 2: 3 fine + 1 coarse, not converged

    RunMetrics::Means all = m.window_means(2);
    CHECK(all.fine_sweeps == Catch::Approx(2.0));
    CHECK(all.sync_fine == Catch::Approx(4.0));
    CHECK(all.sync_coarse == Catch::Approx(0.5));
    CHECK(all.sync_total == Catch::Approx(4.5));
    CHECK(all.lap_equiv == Catch::Approx((1.0 + 3.0 + 0.25) / 2.0));
    CHECK_FALSE(all.all_converged);

    RunMetrics::Means last = m.window_means(1);
    CHECK(last.fine_sweeps == Catch::Approx(3.0));
    CHECK_FALSE(last.all_converged);

    RunMetrics::Means wide = m.window_means(50);  // clamps to available rows
    CHECK(wide.fine_sweeps == Catch::Approx(2.0));
}

TEST_CASE("metrics CSV golden output", "[metrics]") {
    RunMetrics m(4);
    m.record_sweep(LevelKind::fine, 5, 4);
    m.record_sweep(LevelKind::coarse, 9, 1);
    m.record_restriction();
    m.record_prolongation();
    m.close_timestep(1, 1.5e-07, true);
    m.record_sweep(LevelKind::fine, 5, 4);
    m.close_timestep(2, 2e-07, false);

    std::ostringstream os;
    write_metrics_csv(m, os);
    CHECK(os.str() ==
          "step,I_f,I_c,NCC_f,NCC_c,NCC_t,N_Lap,restrictions,prolongations,residual_final\n"
          "1,1,1,2,1,3,1.45,1,1,1.5e-07\n"
          "2,1,0,2,0,2,1,0,0,2e-07\n");
}

TEST_CASE("summary lists windowed means as key = value", "[metrics]") {
    RunMetrics m(4);
    m.record_sweep(LevelKind::fine, 5, 4);
    m.close_timestep(1, 1e-8, true);
    std::ostringstream os;
    write_summary(m, 1, os);
    std::string s = os.str();
    CHECK(s.find("steps = 1\n") != std::string::npos);
    CHECK(s.find("mean_NCC_f = 2\n") != std::string::npos);
    CHECK(s.find("mean_NCC_t = 2\n") != std::string::npos);
    CHECK(s.find("mean_N_Lap = 1\n") != std::string::npos);
    CHECK(s.find("all_converged = true\n") != std::string::npos);
}

TEST_CASE("field CSV carries the grid header", "[metrics][io]") {
    GridSpec g;
    g.nx = 3;
    g.ny = 2;
    g.h = 0.5;
    ScalarField<double> f(3, 2);
    int v = 1;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 3; ++i) f(i, j) = v++;
    std::string path = "test_field_io.csv";
    write_field_csv(f, g, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "nx,ny,h");
    std::getline(in, line);
    CHECK(line == "3,2,0.5");
    std::getline(in, line);
    CHECK(line == "1,2,3");
    std::getline(in, line);
    CHECK(line == "4,5,6");
    std::remove(path.c_str());
}

TEST_CASE("operator CSV lists all nine stencil entries per coarse cell", "[metrics][io]") {
    GridSpec g;
    g.nx = 8;
    g.ny = 8;
    g.tile = 4;
    CoarseOperator<double> op = build_ismg_operator<double>(g);
    std::ostringstream os;
    write_operator_csv(op, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "ci,cj,C,E,W,N,S,NE,NW,SE,SW");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("VTK output is a legacy structured-points file", "[metrics][io]") {
    GridSpec g;
    g.nx = 2;
    g.ny = 2;
    ScalarField<double> p(2, 2);
    MacVelocity<double> vel(2, 2);
    p(0, 0) = 1.0;
    std::string path = "test_io.vtk";
    write_vtk(p, vel, g, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.rfind("# vtk DataFile Version 3.0", 0) == 0);
    CHECK(text.find("DATASET STRUCTURED_POINTS") != std::string::npos);
    CHECK(text.find("DIMENSIONS 2 2 1") != std::string::npos);
    CHECK(text.find("POINT_DATA 4") != std::string::npos);
    CHECK(text.find("SCALARS pressure double") != std::string::npos);
    CHECK(text.find("VECTORS velocity double") != std::string::npos);
    std::remove(path.c_str());
}
