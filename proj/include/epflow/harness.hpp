#ifndef EPFLOW_HARNESS_HPP
#define EPFLOW_HARNESS_HPP

#include "epflow/problems.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace epflow {

/// Everything a finished simulation leaves behind: final fields, sampled
/// mesh trajectory, the conservation ledger, and the event counters.
struct RunReport {
  std::string problem;
  SchemeMode mode = SchemeMode::mmcc;
  MaterialModel material{};
  int n_cells = 0;
  double t_final = 0.0;

  std::vector<double> nodes;
  std::vector<ConservedCell> cells;

  std::vector<std::pair<double, std::vector<double>>> trajectory;
  struct ConservationRow {
    double t;
    Flux3 totals;
  };
  std::vector<ConservationRow> conservation;
  std::vector<double> dt_series;

  Flux3 initial_totals{}, final_totals{}, boundary_flux_integral{};
  double max_conservation_defect = 0.0; // relative, see conservation_defect()
  long steps = 0;
  double wall_seconds = 0.0;
  long positivity_fallbacks = 0;
  long componentwise_fallbacks = 0;
  bool periodic = false;

  std::vector<double> centers() const;
  std::vector<double> widths() const;
  /// Godunov-state primitives recovered from the final averages.
  std::vector<PrimitiveState> primitives() const;
};

struct RunOptions {
  bool record_trajectory = true;
  int max_trajectory_rows = 400;
  int max_conservation_rows = 4000;
};

/// Drive the pipeline from t=0 to config.t_final, snapping the last step to
/// land exactly on the final time. Solver errors are rethrown with the step
/// index and time attached.
RunReport run(const ProblemConfig& config, const RunOptions& opts = {});

/// Fine-grid reference profile: a purely Lagrangian (CCL) run at n_ref
/// cells, regardless of config.mode, exposed as a piecewise-linear
/// interpolant of the cell averages at cell centers.
class ReferenceSolution {
public:
  ReferenceSolution() = default;
  explicit ReferenceSolution(const RunReport& report);

  /// comp: 0=rho, 1=momentum density, 2=energy density, 3=sxx
  double value(int comp, double x) const;
  /// Exact integral average of the interpolant over [xa, xb].
  double average(int comp, double xa, double xb) const;

  const std::vector<double>& centers() const { return x_; }
  const std::array<std::vector<double>, 4>& components() const { return comp_; }
  double domain_a() const { return a_; }
  double domain_b() const { return b_; }

private:
  void check_range(double x) const;

  double a_ = 0.0, b_ = 0.0;
  std::vector<double> x_;
  std::array<std::vector<double>, 4> comp_;
};

ReferenceSolution reference_solution(const ProblemConfig& config,
                                     int n_ref = 4000);

/// Cell-width-weighted discrete error norms of the four components
/// (rho, rho*u, rho*E, sxx) against the reference at cell centers.
struct ErrorNorms {
  std::array<double, 4> l1{}, l2{};
};

ErrorNorms error_norms(const RunReport& report, const ReferenceSolution& ref);

struct ConvergenceRow {
  int n = 0;
  ErrorNorms err;
  std::array<double, 4> order_l1{}, order_l2{}; // NaN where undefined
};

/// Runs the problem at each cell count (fanned out over the worker pool) and
/// tabulates errors with observed orders log(e_coarse/e_fine)/log(ratio).
std::vector<ConvergenceRow> convergence_table(const ProblemConfig& base,
                                              const std::vector<int>& n_list,
                                              const ReferenceSolution& ref);

/// Fill the order columns of rows sorted by n; zero or invalid errors leave
/// a NaN sentinel that formats as "n/a".
void append_orders(std::vector<ConvergenceRow>& rows);

/// Worker pool size: EPFLOW_WORKERS if set, hardware concurrency otherwise.
int worker_count();

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows,
                                     const std::string& norm /* "l1"|"l2" */);

/// CSV output: one file per field plus trajectory.csv and conservation.csv.
void write_run_csvs(const RunReport& report, const std::string& out_dir);

} // namespace epflow

#endif
