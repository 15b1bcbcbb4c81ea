#include "epflow/meshmotion.hpp"

#include <algorithm>
#include <cmath>

namespace epflow {

std::vector<double> lagrangian_predict(std::span<const double> nodes,
                                       std::span<const double> u_faces,
                                       double dt_prev) {
  if (!(dt_prev > 0.0))
    fail(ErrorKind::ConfigError, "lagrangian_predict: dt_prev must be positive");
  std::vector<double> out(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j)
    out[j] = nodes[j] + u_faces[j] * dt_prev;
  require_monotone(out, "lagrangian_predict");
  return out;
}

MonitorField monitor_raw(std::span<const ConservedCell> cells,
                         std::span<const double> old_nodes,
                         std::span<const double> lagrangian_nodes,
                         bool nondimensionalize) {
  const std::size_t n = cells.size();
  MonitorField m;
  m.values.assign(n + 1, 1.0);
  if (n < 2) return m;

  // Density transported onto the predicted mesh with the cell mass held
  // fixed; centers of both meshes for the difference quotients.
  std::vector<double> rho_lag(n), center_lag(n), center_old(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w_old = old_nodes[i + 1] - old_nodes[i];
    const double w_lag = lagrangian_nodes[i + 1] - lagrangian_nodes[i];
    rho_lag[i] = cells[i].rho * w_old / w_lag;
    center_lag[i] = 0.5 * (lagrangian_nodes[i] + lagrangian_nodes[i + 1]);
    center_old[i] = 0.5 * (old_nodes[i] + old_nodes[i + 1]);
  }

  double rho_norm = 1.0, sxx_norm = 1.0;
  if (nondimensionalize) {
    const double len = old_nodes.back() - old_nodes.front();
    auto range = [&](auto&& get) {
      double lo = get(cells[0]), hi = lo;
      for (const auto& c : cells) {
        lo = std::min(lo, get(c));
        hi = std::max(hi, get(c));
      }
      return hi - lo;
    };
    const double dr = range([](const ConservedCell& c) { return c.rho; });
    const double ds = range([](const ConservedCell& c) { return c.sxx; });
    if (dr > 0.0) rho_norm = dr / len;
    if (ds > 0.0) sxx_norm = ds / len;
  }

  std::vector<double> grad_rho(n - 1), grad_sxx(n - 1);
  double max_gr = 0.0, max_gs = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    grad_rho[i] =
        (rho_lag[i + 1] - rho_lag[i]) / (center_lag[i + 1] - center_lag[i]) / rho_norm;
    grad_sxx[i] =
        (cells[i + 1].sxx - cells[i].sxx) / (center_old[i + 1] - center_old[i]) / sxx_norm;
    max_gr = std::max(max_gr, std::abs(grad_rho[i]));
    max_gs = std::max(max_gs, std::abs(grad_sxx[i]));
  }
  const double alpha = (max_gs > 0.0) ? (max_gr / max_gs) * (max_gr / max_gs) : 0.0;

  // Interior nodes j=1..n-1; the end nodes copy their neighbor.
  for (std::size_t i = 0; i + 1 < n; ++i)
    m.values[i + 1] = std::sqrt(1.0 + grad_rho[i] * grad_rho[i] +
                                alpha * grad_sxx[i] * grad_sxx[i]);
  m.values[0] = m.values[1];
  m.values[n] = m.values[n - 1];
  return m;
}

MonitorField monitor_scale(const MonitorField& raw, MonitorHistory& history) {
  const auto [lo_it, hi_it] =
      std::minmax_element(raw.values.begin(), raw.values.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo)) return raw; // flat monitor: no adaptation pressure

  history.max_ratio = std::max(history.max_ratio, hi / lo);
  const double critic = std::min(10.0, history.max_ratio) * lo;
  MonitorField out;
  out.values.resize(raw.values.size());
  const double slope = (critic - lo) / (hi - lo);
  for (std::size_t j = 0; j < raw.values.size(); ++j)
    out.values[j] = lo + slope * (raw.values[j] - lo);
  return out;
}

void monitor_smooth(MonitorField& m, int sweeps) {
  const std::size_t n = m.values.size();
  if (n < 2) return;
  std::vector<double> prev(n);
  for (int s = 0; s < sweeps; ++s) {
    prev.swap(m.values);
    m.values.resize(n);
    m.values[0] = 0.75 * prev[0] + 0.25 * prev[1];
    for (std::size_t j = 1; j + 1 < n; ++j)
      m.values[j] = 0.25 * prev[j - 1] + 0.5 * prev[j] + 0.25 * prev[j + 1];
    m.values[n - 1] = 0.75 * prev[n - 1] + 0.25 * prev[n - 2];
  }
}

std::vector<double> mmpde_solve(std::span<const double> lagrangian_nodes,
                                const MonitorField& monitor, double tau,
                                double dt) {
  const std::size_t n_nodes = lagrangian_nodes.size();
  const std::size_t n = n_nodes - 1; // cells
  require_monotone(lagrangian_nodes, "mmpde_solve input");
  for (double v : monitor.values)
    if (!(v > 0.0)) fail(ErrorKind::SolverFailure, "monitor not positive");

  // Backward Euler for the computational coordinates: for interior node j,
  //   xi_j - lam_j * [ (xi_{j+1}-xi_j)/(Mc_j   * dxp_j)
  //                  - (xi_j-xi_{j-1})/(Mc_{j-1}* dxm_j) ] = xihat_j
  // with lam_j = M_j * dt / (tau * (center_{j+1} - center_j)), cell-average
  // monitors Mc and Lagrangian node spacings dx.
  std::vector<double> diag(n_nodes), lower(n_nodes), upper(n_nodes),
      rhs(n_nodes);
  std::vector<double> center(n), mc(n);
  for (std::size_t i = 0; i < n; ++i) {
    center[i] = 0.5 * (lagrangian_nodes[i] + lagrangian_nodes[i + 1]);
    mc[i] = 0.5 * (monitor.values[i] + monitor.values[i + 1]);
  }

  diag[0] = 1.0;
  upper[0] = 0.0;
  rhs[0] = 0.0;
  diag[n] = 1.0;
  lower[n] = 0.0;
  rhs[n] = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double lam = monitor.values[j] * dt / (tau * (center[j] - center[j - 1]));
    const double cr = lam / (mc[j] * (lagrangian_nodes[j + 1] - lagrangian_nodes[j]));
    const double cl = lam / (mc[j - 1] * (lagrangian_nodes[j] - lagrangian_nodes[j - 1]));
    lower[j] = -cl;
    diag[j] = 1.0 + cl + cr;
    upper[j] = -cr;
    rhs[j] = static_cast<double>(j) / static_cast<double>(n);
  }

  // Thomas algorithm; the system is strictly diagonally dominant but a zero
  // pivot is still checked.
  std::vector<double> cp(n_nodes), dp(n_nodes);
  double piv = diag[0];
  if (piv == 0.0) fail(ErrorKind::SolverFailure, "mmpde_solve: zero pivot");
  cp[0] = upper[0] / piv;
  dp[0] = rhs[0] / piv;
  for (std::size_t j = 1; j < n_nodes; ++j) {
    piv = diag[j] - lower[j] * cp[j - 1];
    if (piv == 0.0) fail(ErrorKind::SolverFailure, "mmpde_solve: zero pivot");
    cp[j] = (j + 1 < n_nodes ? upper[j] : 0.0) / piv;
    dp[j] = (rhs[j] - lower[j] * dp[j - 1]) / piv;
  }
  std::vector<double> xi(n_nodes);
  xi[n] = dp[n];
  for (std::size_t j = n; j-- > 0;) xi[j] = dp[j] - cp[j] * xi[j + 1];
  require_monotone(xi, "mmpde_solve: computational mesh");

  // Invert the correspondence x = Phi_h(xi) at the uniform computational
  // nodes by piecewise-linear interpolation through (xi_j, xL_j).
  std::vector<double> out(n_nodes);
  out[0] = lagrangian_nodes[0];
  out[n] = lagrangian_nodes[n];
  std::size_t seg = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const double target = static_cast<double>(j) / static_cast<double>(n);
    while (seg + 2 < n_nodes && xi[seg + 1] < target) ++seg;
    const double t = (target - xi[seg]) / (xi[seg + 1] - xi[seg]);
    out[j] = lagrangian_nodes[seg] +
             t * (lagrangian_nodes[seg + 1] - lagrangian_nodes[seg]);
  }
  require_monotone(out, "mmpde_solve: physical mesh");
  return out;
}

std::vector<double> relative_velocity(std::span<const double> old_nodes,
                                      std::span<const double> new_nodes,
                                      std::span<const double> u_faces,
                                      double dt_prev) {
  const std::size_t n_nodes = old_nodes.size();
  std::vector<double> w(n_nodes);
  for (std::size_t j = 0; j < n_nodes; ++j)
    w[j] = u_faces[j] - (new_nodes[j] - old_nodes[j]) / dt_prev;
  w[0] = 0.0;
  w[n_nodes - 1] = 0.0;
  return w;
}

} // namespace epflow
