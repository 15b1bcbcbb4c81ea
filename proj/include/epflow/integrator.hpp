#ifndef EPFLOW_INTEGRATOR_HPP
#define EPFLOW_INTEGRATOR_HPP

#include "epflow/meshmotion.hpp"
#include "epflow/reconstruction.hpp"
#include "epflow/riemann.hpp"

#include <span>
#include <vector>

namespace epflow {

enum class BoundaryKind { periodic, wall, piston, free_surface };

struct BoundarySide {
  BoundaryKind kind = BoundaryKind::free_surface;
  double piston_velocity = 0.0;
};

/// Boundary pair. Wall nodes stay fixed; piston and free boundaries are
/// Lagrangian. Periodic requires both sides periodic.
struct BoundarySpec {
  BoundarySide left, right;

  bool periodic() const { return left.kind == BoundaryKind::periodic; }
  void validate() const {
    if ((left.kind == BoundaryKind::periodic) !=
        (right.kind == BoundaryKind::periodic))
      fail(ErrorKind::ConfigError, "periodic requires both sides periodic");
  }
};

/// Ghost extension: two cells per side, with the matching widths. Periodic
/// wraps data and geometry; wall mirrors with u negated; piston(v) mirrors
/// with u_ghost = 2v - u; a free surface extrapolates at zeroth order.
struct ExtendedCells {
  std::vector<ConservedCell> cells; // N+4
  std::vector<double> widths;      // N+4
};

ExtendedCells populate_ghosts(std::span<const ConservedCell> cells,
                              std::span<const double> nodes,
                              const BoundarySpec& boundary,
                              const MaterialModel& mat);

/// Interface flux of the moving-mesh conservation form at a Godunov state:
/// F = (rho*w, p - sxx + rho*u*w, (p - sxx)*u + rho*E*w).
Flux3 interface_flux(const PrimitiveState& q, double w);

/// Riemann fans at every interface of the current mesh (reconstruction +
/// TRRSE). Fans depend only on the cell data, not on the mesh velocity, so
/// one sweep serves both the mesh prediction and the stage operators.
struct InterfaceSolves {
  std::vector<RiemannFan> fans; // N+1
  ReconEvents recon;
};

InterfaceSolves solve_interfaces(std::span<const ConservedCell> cells,
                                 std::span<const double> nodes,
                                 const BoundarySpec& boundary,
                                 const MaterialModel& mat);

/// Spatial operators of one Runge-Kutta stage: the conserved rate
/// -(F_{i+1/2} - F_{i-1/2}) per cell, the deviatoric rate, and the sampled
/// interface data (Godunov u and sxx plus the contact speeds used to move
/// the nodes).
struct StageOperators {
  std::vector<Flux3> rate;      // N
  std::vector<double> sxx_rate; // N
  std::vector<double> u_star;   // N+1 contact speeds
  Flux3 boundary_rate{};        // F_first - F_last (rate of the total)
};

StageOperators stage_operators(const InterfaceSolves& solves,
                               std::span<const ConservedCell> cells,
                               std::span<const double> nodes,
                               std::span<const double> w,
                               const MaterialModel& mat);

/// CFL step bound 0.45 * min_i dx_i / (c_i + |w_i|) with c_i the elastic
/// sound speed at the cell average and w_i the node-averaged relative
/// velocity.
double cfl_dt(std::span<const ConservedCell> cells,
              std::span<const double> nodes, std::span<const double> w,
              const MaterialModel& mat, double cfl = 0.45);

enum class SchemeMode { mmcc, ccl };

struct PipelineParams {
  SchemeMode mode = SchemeMode::mmcc;
  double tau = 0.01;
  double cfl = 0.45;
  int sweeps_override = -1; // < 0 selects the round(N/40) rule
  bool monitor_nondim = false;
};

/// Full simulation state advanced by the pipeline.
struct SimState {
  std::vector<double> nodes;
  std::vector<ConservedCell> cells;
  double time = 0.0;
  long step = 0;
  double dt_prev = 0.0; // <= 0 before the first step completes
  MonitorHistory monitor_history;
  Flux3 boundary_flux_integral{}; // time-integrated F_first - F_last
  ReconEvents recon_events;
};

struct StepInfo {
  double dt = 0.0;
};

/// Three-stage TVD Runge-Kutta update of cells, deviatoric averages, and
/// node positions, with w held fixed for the whole step and the yield clamp
/// applied after every stage. `stage0` must hold the interface solves at the
/// input state. Throws MeshTangled if any stage mesh loses monotonicity.
void rk3_step(SimState& st, std::span<const double> w, double dt,
              const BoundarySpec& boundary, const MaterialModel& mat,
              InterfaceSolves&& stage0);

/// One step of the full pipeline: interface solves, Lagrangian prediction,
/// monitor + MMPDE (MMCC only, skipped on the first step), relative
/// velocity, CFL, RK3. dt_cap bounds the step so runs land exactly on the
/// final time.
StepInfo advance_pipeline(SimState& st, const PipelineParams& params,
                          const BoundarySpec& boundary,
                          const MaterialModel& mat, double dt_cap);

/// Totals sum_i dx_i * Ubar_i of (mass, momentum, energy).
Flux3 conserved_totals(std::span<const ConservedCell> cells,
                       std::span<const double> nodes);

} // namespace epflow

#endif
