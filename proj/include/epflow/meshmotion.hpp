#ifndef EPFLOW_MESHMOTION_HPP
#define EPFLOW_MESHMOTION_HPP

#include "epflow/material.hpp"
#include "epflow/state.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace epflow {

inline void require_monotone(std::span<const double> nodes, const char* who) {
  for (std::size_t j = 1; j < nodes.size(); ++j)
    if (!(nodes[j] > nodes[j - 1]))
      fail(ErrorKind::MeshTangled, std::string(who) + ": node " +
                                       std::to_string(j) + " not increasing");
}

/// Node-centered positive monitor values plus the running maximum of the
/// per-step max/min ratio used by the time-dependent scaling.
struct MonitorField {
  std::vector<double> values; // N+1 node values
};

struct MonitorHistory {
  double max_ratio = 1.0;
};

/// x_L = x + u * dt_prev per node; throws MeshTangled if the predicted nodes
/// are not strictly increasing.
std::vector<double> lagrangian_predict(std::span<const double> nodes,
                                       std::span<const double> u_faces,
                                       double dt_prev);

/// Unscaled arc-length style monitor sqrt(1 + (d rho/dx)^2 + alpha
/// (d sxx/dx)^2) on the Lagrangian-predicted mesh. Density averages are
/// mass-rescaled onto the predicted mesh; the deviatoric gradient uses the
/// old-mesh, old-time values. alpha balances the two gradients at their
/// respective maxima and is zero when the deviatoric field is flat.
/// Boundary nodes copy the nearest interior value. With `nondimensionalize`
/// the gradients are normalized by field range over domain length first
/// (off by default; the plain SI form is the reference behavior).
MonitorField monitor_raw(std::span<const ConservedCell> cells,
                         std::span<const double> old_nodes,
                         std::span<const double> lagrangian_nodes,
                         bool nondimensionalize = false);

/// Affine rescale of the raw monitor onto [min, M_critic] where M_critic =
/// min(10, running max ratio) * min. A flat raw field passes through
/// unchanged. Updates the history with the current step's ratio.
MonitorField monitor_scale(const MonitorField& raw, MonitorHistory& history);

/// Weighted-average sweeps (1/4, 1/2, 1/4 interior; 3/4, 1/4 one-sided at
/// the ends), applied `sweeps` times.
void monitor_smooth(MonitorField& m, int sweeps);

inline int default_sweeps(int n_cells) {
  return std::max(1, (n_cells + 20) / 40); // round(N/40), minimum 1
}

/// One backward-Euler step of the discrete moving mesh PDE on the
/// Lagrangian-predicted mesh, starting from the uniform computational mesh,
/// followed by inversion of the node correspondence by piecewise-linear
/// interpolation. Endpoints stay pinned to the Lagrangian endpoints.
std::vector<double> mmpde_solve(std::span<const double> lagrangian_nodes,
                                const MonitorField& monitor, double tau,
                                double dt);

/// w = u - (x_new - x_old)/dt_prev per node; the endpoint values are set to
/// exactly zero (endpoints are pinned to the Lagrangian prediction).
std::vector<double> relative_velocity(std::span<const double> old_nodes,
                                      std::span<const double> new_nodes,
                                      std::span<const double> u_faces,
                                      double dt_prev);

} // namespace epflow

#endif
