#include "epflow/problems.hpp"

#include "epflow/eos.hpp"

#include <algorithm>
#include <cmath>

namespace epflow {

void ProblemConfig::validate() const {
  if (!(t_final > 0.0)) fail(ErrorKind::ConfigError, "t_final must be positive");
  if (cells < 8) fail(ErrorKind::ConfigError, "need at least 8 cells");
  if (!(domain_b > domain_a)) fail(ErrorKind::ConfigError, "empty domain");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail(ErrorKind::ConfigError, "cfl out of range");
  if (!(tau > 0.0)) fail(ErrorKind::ConfigError, "tau must be positive");
  material.validate();
  boundary.validate();
}

ProblemConfig problem_accuracy() {
  ProblemConfig c;
  c.name = "accuracy";
  c.domain_a = 0.0;
  c.domain_b = 1.0;
  c.material = materials::copper_soft();
  const double rho0 = c.material.rho0;
  c.ic.rho = [rho0](double x) { return rho0 - 0.1 * std::sin(2.0 * M_PI * x); };
  c.ic.u = [](double x) { return 1.0 - 0.01 * std::sin(2.0 * M_PI * x); };
  c.ic.p = [](double) { return 2.0; };
  c.ic.sxx = [](double) { return 0.0; };
  c.boundary.left.kind = BoundaryKind::periodic;
  c.boundary.right.kind = BoundaryKind::periodic;
  // One acoustic traversal of the unit domain. Long enough that temporal and
  // spatial errors both register, short enough that the whole convergence
  // study plus its 4000-cell reference stays desk-scale.
  c.t_final = 2.5e-4;
  return c;
}

ProblemConfig problem_piston() {
  ProblemConfig c;
  c.name = "piston";
  c.domain_a = 0.0;
  c.domain_b = 1.0;
  c.material = materials::copper();
  const double rho0 = c.material.rho0;
  c.ic.rho = [rho0](double) { return rho0; };
  c.ic.u = [](double) { return 0.0; };
  c.ic.p = [](double) { return 1.0e5; };
  c.ic.sxx = [](double) { return 0.0; };
  c.boundary.left.kind = BoundaryKind::piston;
  c.boundary.left.piston_velocity = 20.0;
  c.boundary.right.kind = BoundaryKind::wall;
  c.t_final = 150.0e-6;
  return c;
}

ProblemConfig problem_wilkins() {
  ProblemConfig c;
  c.name = "wilkins";
  c.domain_a = 0.0;
  c.domain_b = 50.0e-3;
  c.material = materials::aluminium();
  const double rho0 = c.material.rho0;
  const double x_impact = 5.0e-3;
  c.ic.rho = [rho0](double) { return rho0; };
  c.ic.u = [x_impact](double x) { return x <= x_impact ? 800.0 : 0.0; };
  c.ic.p = [](double) { return 1.0e-6; };
  c.ic.sxx = [](double) { return 0.0; };
  c.ic.breakpoints = {x_impact};
  c.boundary.left.kind = BoundaryKind::free_surface;
  c.boundary.right.kind = BoundaryKind::wall;
  c.t_final = 5.0e-6;
  return c;
}

ProblemConfig builtin_problem(const std::string& name) {
  if (name == "accuracy") return problem_accuracy();
  if (name == "piston") return problem_piston();
  if (name == "wilkins") return problem_wilkins();
  fail(ErrorKind::ConfigError, "unknown problem '" + name + "'");
}

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr double kGaussX[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGaussW[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};

} // namespace

std::vector<ConservedCell> initialize_cells(const ProblemConfig& config,
                                            std::vector<double>& nodes) {
  const int n = config.cells;
  nodes.resize(n + 1);
  for (int j = 0; j <= n; ++j)
    nodes[j] = config.domain_a +
               (config.domain_b - config.domain_a) * j / static_cast<double>(n);

  std::vector<ConservedCell> cells(n);
  for (int i = 0; i < n; ++i) {
    // Split the cell at profile breakpoints so each quadrature piece is
    // smooth; matters only for the cell containing a discontinuity.
    std::vector<double> pts = {nodes[i], nodes[i + 1]};
    for (double b : config.ic.breakpoints)
      if (b > nodes[i] && b < nodes[i + 1]) pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    ConservedCell avg{};
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      const double mid = 0.5 * (pts[s] + pts[s + 1]);
      const double half = 0.5 * (pts[s + 1] - pts[s]);
      for (int g = 0; g < 5; ++g) {
        const double x = mid + half * kGaussX[g];
        const double wq = kGaussW[g] * half;
        const double rho = config.ic.rho(x);
        const double u = config.ic.u(x);
        const double p = config.ic.p(x);
        const double sxx = config.ic.sxx(x);
        const double E =
            eos::energy_from_pressure(rho, p, config.material) + 0.5 * u * u;
        avg.rho += wq * rho;
        avg.mom += wq * rho * u;
        avg.energy += wq * rho * E;
        avg.sxx += wq * sxx;
      }
    }
    const double dx = nodes[i + 1] - nodes[i];
    cells[i] = {avg.rho / dx, avg.mom / dx, avg.energy / dx, avg.sxx / dx};
  }
  return cells;
}

} // namespace epflow
