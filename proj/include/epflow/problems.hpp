#ifndef EPFLOW_PROBLEMS_HPP
#define EPFLOW_PROBLEMS_HPP

#include "epflow/integrator.hpp"

#include <functional>
#include <string>
#include <vector>

namespace epflow {

/// Pointwise initial data (rho, u, p, sxx) plus the interior discontinuity
/// locations, so cell averaging can integrate each smooth piece exactly.
struct InitialProfile {
  std::function<double(double)> rho, u, p, sxx;
  std::vector<double> breakpoints;
};

struct ProblemConfig {
  std::string name;
  double domain_a = 0.0, domain_b = 1.0;
  int cells = 100;
  MaterialModel material{};
  InitialProfile ic;
  BoundarySpec boundary;
  double t_final = 0.0;
  SchemeMode mode = SchemeMode::mmcc;
  double tau = 0.01;
  double cfl = 0.45;
  int sweeps_override = -1;
  bool monitor_nondim = false;

  void validate() const;
};

/// Smooth periodic accuracy problem: sinusoidal density and velocity
/// perturbations in soft copper, both domain ends moving at the flow
/// velocity. The run time covers one acoustic traversal of the domain.
ProblemConfig problem_accuracy();

/// Copper block hit by a 20 m/s piston on the left with a fixed wall on the
/// right; develops an elastic precursor ahead of a plastic shock.
ProblemConfig problem_piston();

/// Aluminium flyer-plate impact: an 800 m/s slab striking resting material,
/// free surface on the left and a wall on the right.
ProblemConfig problem_wilkins();

/// Built-in problem by name ("accuracy", "piston", "wilkins").
ProblemConfig builtin_problem(const std::string& name);

/// Cell averages of the initial profile (Gauss-Legendre per smooth piece).
std::vector<ConservedCell> initialize_cells(const ProblemConfig& config,
                                            std::vector<double>& nodes);

} // namespace epflow

#endif
