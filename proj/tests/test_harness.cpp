#include "doctest.h"
#include "epflow/harness.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace epflow;

TEST_CASE("builtin problem definitions") {
  SUBCASE("accuracy") {
    const ProblemConfig c = problem_accuracy();
    CHECK(c.material.gamma0 == 2.0);
    CHECK(c.material.hugoniot_slope_s == 1.49);
    CHECK(c.material.a0 == 3940.0);
    CHECK(c.material.shear_mu == 4.5e9);
    CHECK(c.material.yield_Y0 == 90.0e9);
    CHECK(c.boundary.periodic());
    CHECK(c.ic.p(0.3) == 2.0);
    CHECK(c.ic.rho(0.25) == doctest::Approx(8930.0 - 0.1));
    CHECK(c.ic.u(0.25) == doctest::Approx(1.0 - 0.01));
  }
  SUBCASE("piston") {
    const ProblemConfig c = problem_piston();
    CHECK(c.boundary.left.kind == BoundaryKind::piston);
    CHECK(c.boundary.left.piston_velocity == 20.0);
    CHECK(c.boundary.right.kind == BoundaryKind::wall);
    CHECK(c.t_final == doctest::Approx(150e-6));
    CHECK(c.material.yield_Y0 == 90.0e6);
    CHECK(c.material.shear_mu == 45.0e9);
  }
  SUBCASE("wilkins") {
    const ProblemConfig c = problem_wilkins();
    CHECK(c.material.rho0 == 2785.0);
    CHECK(c.material.a0 == 5328.0);
    CHECK(c.material.hugoniot_slope_s == 1.338);
    CHECK(c.domain_b == doctest::Approx(50e-3));
    CHECK(c.ic.u(0.001) == 800.0);
    CHECK(c.ic.u(0.02) == 0.0);
    CHECK(c.boundary.left.kind == BoundaryKind::free_surface);
  }
  SUBCASE("unknown name is a config error") {
    CHECK_THROWS_AS((void)builtin_problem("nope"), SolverError);
  }
}

TEST_CASE("initialize_cells") {
  SUBCASE("accuracy problem: sine integrates away, total mass is rho0*L") {
    ProblemConfig c = problem_accuracy();
    c.cells = 64;
    std::vector<double> nodes;
    const auto cells = initialize_cells(c, nodes);
    double mass = 0.0;
    for (int i = 0; i < c.cells; ++i)
      mass += cells[i].rho * (nodes[i + 1] - nodes[i]);
    CHECK(mass == doctest::Approx(8930.0).epsilon(1e-12));
  }
  SUBCASE("wilkins: the impact-cell average splits at the breakpoint") {
    ProblemConfig c = problem_wilkins();
    c.cells = 8; // width 6.25 mm; the breakpoint at 5 mm is inside cell 0
    std::vector<double> nodes;
    const auto cells = initialize_cells(c, nodes);
    const double frac = 5.0e-3 / 6.25e-3;
    const double expect_u = 800.0 * frac;
    CHECK(cells[0].mom / cells[0].rho == doctest::Approx(expect_u).epsilon(1e-12));
    CHECK(cells[1].mom == doctest::Approx(0.0));
  }
}

TEST_CASE("run: short accuracy run behaves") {
  ProblemConfig c = problem_accuracy();
  c.cells = 32;
  c.t_final = 2e-5;
  const RunReport rep = run(c);
  CHECK(rep.steps > 0);
  CHECK(rep.max_conservation_defect <= 1e-11);
  CHECK(rep.positivity_fallbacks == 0);

  // trajectory rows strictly increasing in time, meshes monotone
  for (std::size_t r = 1; r < rep.trajectory.size(); ++r)
    CHECK(rep.trajectory[r].first > rep.trajectory[r - 1].first);
  for (const auto& [t, nodes] : rep.trajectory)
    for (std::size_t j = 1; j < nodes.size(); ++j)
      CHECK(nodes[j] > nodes[j - 1]);

  // every recorded step size is positive and the sum hits t_final
  double acc = 0.0;
  for (double dt : rep.dt_series) {
    CHECK(dt > 0.0);
    acc += dt;
  }
  CHECK(acc == doctest::Approx(c.t_final).epsilon(1e-12));
}

TEST_CASE("reference solution interpolates and averages") {
  ProblemConfig c = problem_accuracy();
  c.cells = 32;
  c.t_final = 1e-5;
  const RunReport rep = run(c);
  const ReferenceSolution ref(rep);

  SUBCASE("a run compared against itself has zero error") {
    const ErrorNorms e = error_norms(rep, ref);
    for (int comp = 0; comp < 4; ++comp) {
      CHECK(e.l1[comp] == 0.0);
      CHECK(e.l2[comp] == 0.0);
    }
  }

  SUBCASE("a constant offset in rho gives L1 = L2 = delta on a unit domain") {
    RunReport shifted = rep;
    const double delta = 0.37;
    for (auto& cell : shifted.cells) cell.rho += delta;
    const ErrorNorms e = error_norms(shifted, ref);
    const double len = rep.nodes.back() - rep.nodes.front();
    CHECK(e.l1[0] == doctest::Approx(delta * len).epsilon(1e-12));
    CHECK(e.l2[0] == doctest::Approx(delta * std::sqrt(len)).epsilon(1e-12));
    CHECK(e.l1[3] == 0.0);
  }

  SUBCASE("averages integrate the interpolant exactly") {
    // average over a span covering knots equals the trapezoid sum
    const auto& x = ref.centers();
    const double xa = x[3], xb = x[7];
    double acc = 0.0;
    for (int k = 3; k < 7; ++k)
      acc += 0.5 * (ref.value(0, x[k]) + ref.value(0, x[k + 1])) *
             (x[k + 1] - x[k]);
    CHECK(ref.average(0, xa, xb) == doctest::Approx(acc / (xb - xa)).epsilon(1e-13));
  }

  SUBCASE("queries far outside the domain are rejected") {
    CHECK_THROWS_AS((void)ref.value(0, rep.nodes.back() + 0.5), SolverError);
  }
}

TEST_CASE("convergence table machinery") {
  ProblemConfig c = problem_accuracy();
  c.t_final = 5e-6;

  ProblemConfig fine = c;
  fine.cells = 256;
  fine.mode = SchemeMode::ccl;
  RunOptions opts;
  opts.record_trajectory = false;
  const ReferenceSolution ref(run(fine, opts));

  const auto rows = convergence_table(c, {16, 32}, ref);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 16);
  CHECK(rows[1].n == 32);
  CHECK(std::isnan(rows[0].order_l1[0]));
  CHECK(rows[1].err.l1[0] < rows[0].err.l1[0]);
  CHECK(rows[1].order_l1[0] > 0.0);

  const std::string table = format_convergence_table(rows, "l1");
  CHECK(table.find("n/a") != std::string::npos);
  CHECK(table.find("rho") != std::string::npos);
}

TEST_CASE("identical error rows format orders as n/a") {
  // zero errors (run vs itself) make the order undefined
  ProblemConfig c = problem_accuracy();
  c.cells = 16;
  c.t_final = 2e-6;
  const RunReport rep = run(c);
  const ReferenceSolution ref(rep);
  ConvergenceRow r0, r1;
  r0.n = 16;
  r0.err = error_norms(rep, ref);
  r1 = r0;
  r1.n = 32;
  std::vector<ConvergenceRow> rows = {r0, r1};
  append_orders(rows);
  const std::string table = format_convergence_table(rows, "l1");
  // all errors are zero, so every order column shows the sentinel
  CHECK(table.find("n/a") != std::string::npos);
}

TEST_CASE("worker count respects EPFLOW_WORKERS") {
  setenv("EPFLOW_WORKERS", "3", 1);
  CHECK(worker_count() == 3);
  unsetenv("EPFLOW_WORKERS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("csv output files") {
  ProblemConfig c = problem_accuracy();
  c.cells = 16;
  c.t_final = 2e-6;
  const RunReport rep = run(c);
  const std::string dir = "epflow_test_out";
  write_run_csvs(rep, dir);

  for (const char* name :
       {"density.csv", "velocity.csv", "pressure.csv", "deviatoric_stress.csv",
        "total_energy.csv", "trajectory.csv", "conservation.csv"}) {
    const auto path = std::filesystem::path(dir) / name;
    REQUIRE(std::filesystem::exists(path));
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header.find(",") != std::string::npos);
    CHECK(header.find("[") != std::string::npos); // units present
  }
  std::filesystem::remove_all(dir);
}
