#ifndef EPFLOW_STATE_HPP
#define EPFLOW_STATE_HPP

#include <array>

namespace epflow {

/// Point values used at interfaces and inside the Riemann solver.
/// E is the total specific energy e + u^2/2.
struct PrimitiveState {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
  double sxx = 0.0;
  double E = 0.0;
};

/// Per-cell averages of the conserved triple (rho, rho*u, rho*E) plus the
/// cell-average deviatoric stress, which is carried alongside but is not a
/// conserved quantity.
struct ConservedCell {
  double rho = 0.0;    // mass density average
  double mom = 0.0;    // momentum density average
  double energy = 0.0; // total energy density average
  double sxx = 0.0;    // deviatoric stress average
};

using Flux3 = std::array<double, 3>;

} // namespace epflow

#endif
