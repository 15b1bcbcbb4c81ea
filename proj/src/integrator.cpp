#include "epflow/integrator.hpp"

#include "epflow/constitutive.hpp"
#include "epflow/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epflow {

namespace {

ConservedCell mirror_cell(const ConservedCell& c, double u_wall) {
  // Reflect the velocity about u_wall keeping rho, e, sxx; for a wall
  // u_wall = 0, for a piston u_wall = v so that u_ghost = 2v - u.
  const double u = c.mom / c.rho;
  const double e = c.energy / c.rho - 0.5 * u * u;
  const double ug = 2.0 * u_wall - u;
  return {c.rho, c.rho * ug, c.rho * (e + 0.5 * ug * ug), c.sxx};
}

} // namespace

ExtendedCells populate_ghosts(std::span<const ConservedCell> cells,
                              std::span<const double> nodes,
                              const BoundarySpec& boundary,
                              const MaterialModel& mat) {
  (void)mat;
  const std::size_t n = cells.size();
  if (n < 4) fail(ErrorKind::ConfigError, "populate_ghosts: need N >= 4");
  boundary.validate();

  ExtendedCells ext;
  ext.cells.resize(n + 4);
  ext.widths.resize(n + 4);
  for (std::size_t i = 0; i < n; ++i) {
    ext.cells[i + 2] = cells[i];
    ext.widths[i + 2] = nodes[i + 1] - nodes[i];
  }

  auto fill_side = [&](bool left_side, const BoundarySide& side) {
    // g = 1 is the ghost adjacent to the boundary, g = 2 the outer one.
    for (int g = 1; g <= 2; ++g) {
      const std::size_t slot = left_side ? 2 - g : n + 1 + g;
      std::size_t src = 0;
      ConservedCell value;
      switch (side.kind) {
        case BoundaryKind::periodic:
          src = left_side ? n - g : g - 1;
          value = cells[src];
          break;
        case BoundaryKind::wall:
          src = left_side ? g - 1 : n - g;
          value = mirror_cell(cells[src], 0.0);
          break;
        case BoundaryKind::piston:
          src = left_side ? g - 1 : n - g;
          value = mirror_cell(cells[src], side.piston_velocity);
          break;
        case BoundaryKind::free_surface:
          src = left_side ? 0 : n - 1;
          value = cells[src];
          break;
      }
      ext.cells[slot] = value;
      ext.widths[slot] = nodes[src + 1] - nodes[src];
    }
  };
  fill_side(true, boundary.left);
  fill_side(false, boundary.right);
  return ext;
}

Flux3 interface_flux(const PrimitiveState& q, double w) {
  const double traction = q.p - q.sxx; // -sigma_x
  return {q.rho * w, traction + q.rho * q.u * w,
          traction * q.u + q.rho * q.E * w};
}

InterfaceSolves solve_interfaces(std::span<const ConservedCell> cells,
                                 std::span<const double> nodes,
                                 const BoundarySpec& boundary,
                                 const MaterialModel& mat) {
  InterfaceSolves out;
  const ExtendedCells ext = populate_ghosts(cells, nodes, boundary, mat);
  const auto faces =
      reconstruct_interfaces(ext.cells, ext.widths, mat, out.recon);
  out.fans.resize(faces.size());
  for (std::size_t j = 0; j < faces.size(); ++j)
    out.fans[j] = trrse_solve(faces[j].minus, faces[j].plus, mat);
  return out;
}

StageOperators stage_operators(const InterfaceSolves& solves,
                               std::span<const ConservedCell> cells,
                               std::span<const double> nodes,
                               std::span<const double> w,
                               const MaterialModel& mat) {
  const std::size_t n = cells.size();
  StageOperators ops;
  ops.rate.resize(n);
  ops.sxx_rate.resize(n);
  ops.u_star.resize(n + 1);

  std::vector<Flux3> flux(n + 1);
  std::vector<double> u_god(n + 1), s_god(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const RiemannFan& fan = solves.fans[j];
    const PrimitiveState& q = godunov_sample(fan, fan.u_star - w[j]);
    flux[j] = interface_flux(q, w[j]);
    u_god[j] = q.u;
    s_god[j] = q.sxx;
    ops.u_star[j] = fan.u_star;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c)
      ops.rate[i][c] = -(flux[i + 1][c] - flux[i][c]);
    ops.sxx_rate[i] =
        sxx_rhs(static_cast<int>(i), u_god, s_god, w, cells[i].sxx, nodes, mat);
  }
  for (int c = 0; c < 3; ++c)
    ops.boundary_rate[c] = flux[0][c] - flux[n][c];
  return ops;
}

double cfl_dt(std::span<const ConservedCell> cells,
              std::span<const double> nodes, std::span<const double> w,
              const MaterialModel& mat, double cfl) {
  require_monotone(nodes, "cfl_dt");
  double dt = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const PrimitiveState q = primitive_from_conserved(cells[i], mat);
    const double c = eos::sound_speed_elastic(q, mat);
    const double wi = 0.5 * (w[i] + w[i + 1]);
    dt = std::min(dt, (nodes[i + 1] - nodes[i]) / (c + std::abs(wi)));
  }
  return cfl * dt;
}

namespace {

void check_yield_clamped(std::span<const ConservedCell> cells,
                         const MaterialModel& mat) {
  const double bound = (2.0 / 3.0) * mat.yield_Y0;
  for (const auto& c : cells)
    if (std::abs(c.sxx) > bound)
      fail(ErrorKind::SolverFailure, "yield bound violated after stage");
}

} // namespace

void rk3_step(SimState& st, std::span<const double> w, double dt,
              const BoundarySpec& boundary, const MaterialModel& mat,
              InterfaceSolves&& stage0) {
  const std::size_t n = st.cells.size();
  const std::vector<double> nodes0 = st.nodes;
  const std::vector<ConservedCell> cells0 = st.cells;

  std::vector<double> vol0(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = nodes0[i + 1] - nodes0[i];
    vol0[3 * i + 0] = dx * cells0[i].rho;
    vol0[3 * i + 1] = dx * cells0[i].mom;
    vol0[3 * i + 2] = dx * cells0[i].energy;
  }

  auto move_nodes = [&](const std::vector<double>& base,
                        const StageOperators& ops) {
    std::vector<double> out(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
      out[j] = base[j] + dt * (ops.u_star[j] - w[j]);
    return out;
  };

  // Stage 1
  const StageOperators ops0 =
      stage_operators(stage0, cells0, nodes0, w, mat);
  std::vector<double> nodes1 = move_nodes(nodes0, ops0);
  require_monotone(nodes1, "rk3 stage 1");
  std::vector<ConservedCell> cells1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx1 = nodes1[i + 1] - nodes1[i];
    cells1[i].rho = (vol0[3 * i + 0] + dt * ops0.rate[i][0]) / dx1;
    cells1[i].mom = (vol0[3 * i + 1] + dt * ops0.rate[i][1]) / dx1;
    cells1[i].energy = (vol0[3 * i + 2] + dt * ops0.rate[i][2]) / dx1;
    cells1[i].sxx = von_mises_limit(cells0[i].sxx + dt * ops0.sxx_rate[i],
                                    mat.yield_Y0);
  }
  check_yield_clamped(cells1, mat);

  // Stage 2
  InterfaceSolves s1 = solve_interfaces(cells1, nodes1, boundary, mat);
  st.recon_events.positivity_fallbacks += s1.recon.positivity_fallbacks;
  st.recon_events.componentwise_fallbacks += s1.recon.componentwise_fallbacks;
  const StageOperators ops1 = stage_operators(s1, cells1, nodes1, w, mat);
  std::vector<double> nodes2(n + 1);
  {
    const std::vector<double> adv = move_nodes(nodes1, ops1);
    for (std::size_t j = 0; j <= n; ++j)
      nodes2[j] = 0.75 * nodes0[j] + 0.25 * adv[j];
  }
  require_monotone(nodes2, "rk3 stage 2");
  std::vector<ConservedCell> cells2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx1 = nodes1[i + 1] - nodes1[i];
    const double dx2 = nodes2[i + 1] - nodes2[i];
    cells2[i].rho = (0.75 * vol0[3 * i + 0] +
                     0.25 * (dx1 * cells1[i].rho + dt * ops1.rate[i][0])) /
                    dx2;
    cells2[i].mom = (0.75 * vol0[3 * i + 1] +
                     0.25 * (dx1 * cells1[i].mom + dt * ops1.rate[i][1])) /
                    dx2;
    cells2[i].energy = (0.75 * vol0[3 * i + 2] +
                        0.25 * (dx1 * cells1[i].energy + dt * ops1.rate[i][2])) /
                       dx2;
    cells2[i].sxx = von_mises_limit(
        0.75 * cells0[i].sxx +
            0.25 * (cells1[i].sxx + dt * ops1.sxx_rate[i]),
        mat.yield_Y0);
  }
  check_yield_clamped(cells2, mat);

  // Stage 3
  InterfaceSolves s2 = solve_interfaces(cells2, nodes2, boundary, mat);
  st.recon_events.positivity_fallbacks += s2.recon.positivity_fallbacks;
  st.recon_events.componentwise_fallbacks += s2.recon.componentwise_fallbacks;
  const StageOperators ops2 = stage_operators(s2, cells2, nodes2, w, mat);
  std::vector<double> nodes3(n + 1);
  {
    const std::vector<double> adv = move_nodes(nodes2, ops2);
    for (std::size_t j = 0; j <= n; ++j)
      nodes3[j] = (1.0 / 3.0) * nodes0[j] + (2.0 / 3.0) * adv[j];
  }
  require_monotone(nodes3, "rk3 stage 3");
  std::vector<ConservedCell> cells3(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx2 = nodes2[i + 1] - nodes2[i];
    const double dx3 = nodes3[i + 1] - nodes3[i];
    cells3[i].rho =
        ((1.0 / 3.0) * vol0[3 * i + 0] +
         (2.0 / 3.0) * (dx2 * cells2[i].rho + dt * ops2.rate[i][0])) /
        dx3;
    cells3[i].mom =
        ((1.0 / 3.0) * vol0[3 * i + 1] +
         (2.0 / 3.0) * (dx2 * cells2[i].mom + dt * ops2.rate[i][1])) /
        dx3;
    cells3[i].energy =
        ((1.0 / 3.0) * vol0[3 * i + 2] +
         (2.0 / 3.0) * (dx2 * cells2[i].energy + dt * ops2.rate[i][2])) /
        dx3;
    cells3[i].sxx = von_mises_limit(
        (1.0 / 3.0) * cells0[i].sxx +
            (2.0 / 3.0) * (cells2[i].sxx + dt * ops2.sxx_rate[i]),
        mat.yield_Y0);
  }
  check_yield_clamped(cells3, mat);

  for (int c = 0; c < 3; ++c)
    st.boundary_flux_integral[c] +=
        dt * ((1.0 / 6.0) * ops0.boundary_rate[c] +
              (1.0 / 6.0) * ops1.boundary_rate[c] +
              (2.0 / 3.0) * ops2.boundary_rate[c]);

  st.nodes = std::move(nodes3);
  st.cells = std::move(cells3);
}

StepInfo advance_pipeline(SimState& st, const PipelineParams& params,
                          const BoundarySpec& boundary,
                          const MaterialModel& mat, double dt_cap) {
  const std::size_t n = st.cells.size();

  // (i) interface Riemann solves at t_n; reused by stage 1.
  InterfaceSolves stage0 = solve_interfaces(st.cells, st.nodes, boundary, mat);
  st.recon_events.positivity_fallbacks += stage0.recon.positivity_fallbacks;
  st.recon_events.componentwise_fallbacks +=
      stage0.recon.componentwise_fallbacks;

  std::vector<double> w(n + 1, 0.0);
  if (params.mode == SchemeMode::mmcc && st.dt_prev > 0.0) {
    std::vector<double> u_faces(n + 1);
    for (std::size_t j = 0; j <= n; ++j) u_faces[j] = stage0.fans[j].u_star;
    // (ii)-(iv): prediction, monitor, MMPDE, relative velocity.
    const std::vector<double> lag =
        lagrangian_predict(st.nodes, u_faces, st.dt_prev);
    MonitorField monitor =
        monitor_raw(st.cells, st.nodes, lag, params.monitor_nondim);
    monitor = monitor_scale(monitor, st.monitor_history);
    const int sweeps = params.sweeps_override >= 0
                           ? params.sweeps_override
                           : default_sweeps(static_cast<int>(n));
    monitor_smooth(monitor, sweeps);
    const std::vector<double> adapted =
        mmpde_solve(lag, monitor, params.tau, st.dt_prev);
    w = relative_velocity(st.nodes, adapted, u_faces, st.dt_prev);
  }

  // (v) CFL bound, never enlarged past the cap.
  const double dt = std::min(cfl_dt(st.cells, st.nodes, w, mat, params.cfl),
                             dt_cap);
  if (!(dt > 0.0)) fail(ErrorKind::SolverFailure, "nonpositive time step");

  // (vi) the three-stage update.
  rk3_step(st, w, dt, boundary, mat, std::move(stage0));
  st.time += dt;
  st.dt_prev = dt;
  ++st.step;
  return {dt};
}

Flux3 conserved_totals(std::span<const ConservedCell> cells,
                       std::span<const double> nodes) {
  Flux3 t{};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double dx = nodes[i + 1] - nodes[i];
    t[0] += dx * cells[i].rho;
    t[1] += dx * cells[i].mom;
    t[2] += dx * cells[i].energy;
  }
  return t;
}

} // namespace epflow
