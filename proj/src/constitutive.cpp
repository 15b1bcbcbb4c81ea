#include "epflow/constitutive.hpp"

#include <string>

namespace epflow {

double sxx_rhs(int cell, std::span<const double> u_god,
               std::span<const double> sxx_god, std::span<const double> w,
               double sxx_avg, std::span<const double> nodes,
               const MaterialModel& mat) {
  const int j = cell;
  const double dx = nodes[j + 1] - nodes[j];
  if (!(dx > 1e-300))
    fail(ErrorKind::DegenerateCell,
         "cell " + std::to_string(cell) + " has nonpositive width");
  const double du = u_god[j + 1] - u_god[j];
  const double adv = w[j + 1] * sxx_god[j + 1] - w[j] * sxx_god[j];
  const double dw = w[j + 1] - w[j];
  return ((4.0 / 3.0) * mat.shear_mu * du - adv + sxx_avg * dw) / dx;
}

} // namespace epflow
