#ifndef EPFLOW_CONSTITUTIVE_HPP
#define EPFLOW_CONSTITUTIVE_HPP

#include "epflow/material.hpp"

#include <span>

namespace epflow {

/// von Mises yield clamp: beta limited to [-(2/3)Y0, +(2/3)Y0].
inline double von_mises_limit(double beta, double Y0) {
  const double bound = (2.0 / 3.0) * Y0;
  if (beta > bound) return bound;
  if (beta < -bound) return -bound;
  return beta;
}

/// Rate of the cell-average deviatoric stress in cell i on a moving mesh:
/// the hypoelastic source (4mu/3) du/dx plus the flux form of the relative
/// advection -w d(sxx)/dx. u_god and sxx_god are the Godunov interface
/// values; w is the (per-step constant) relative velocity at the nodes.
/// Node j is the left face of cell j, so cell i uses faces i and i+1.
double sxx_rhs(int cell, std::span<const double> u_god,
               std::span<const double> sxx_god, std::span<const double> w,
               double sxx_avg, std::span<const double> nodes,
               const MaterialModel& mat);

} // namespace epflow

#endif
