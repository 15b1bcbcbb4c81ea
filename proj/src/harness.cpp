#include "epflow/harness.hpp"

#include "epflow/eos.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

namespace epflow {

std::vector<double> RunReport::centers() const {
  std::vector<double> c(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    c[i] = 0.5 * (nodes[i] + nodes[i + 1]);
  return c;
}

std::vector<double> RunReport::widths() const {
  std::vector<double> w(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) w[i] = nodes[i + 1] - nodes[i];
  return w;
}

std::vector<PrimitiveState> RunReport::primitives() const {
  std::vector<PrimitiveState> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    out[i] = primitive_from_conserved(cells[i], material);
  return out;
}

namespace {

template <typename Rows>
void thin_rows(Rows& rows, int limit, long& stride) {
  if (static_cast<int>(rows.size()) < limit) return;
  Rows kept;
  kept.reserve(rows.size() / 2 + 1);
  for (std::size_t k = 0; k < rows.size(); k += 2) kept.push_back(rows[k]);
  rows = std::move(kept);
  stride *= 2;
}

double conservation_defect(const Flux3& now, const Flux3& start,
                           const Flux3& bflux, bool periodic) {
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double expect = periodic ? start[c] : start[c] + bflux[c];
    const double scale =
        std::max({std::abs(start[c]), std::abs(bflux[c]), 1e-300});
    worst = std::max(worst, std::abs(now[c] - expect) / scale);
  }
  return worst;
}

} // namespace

RunReport run(const ProblemConfig& config, const RunOptions& opts) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  RunReport rep;
  rep.problem = config.name;
  rep.mode = config.mode;
  rep.material = config.material;
  rep.n_cells = config.cells;
  rep.t_final = config.t_final;
  rep.periodic = config.boundary.periodic();

  SimState st;
  st.cells = initialize_cells(config, st.nodes);
  rep.initial_totals = conserved_totals(st.cells, st.nodes);

  PipelineParams params;
  params.mode = config.mode;
  params.tau = config.tau;
  params.cfl = config.cfl;
  params.sweeps_override = config.sweeps_override;
  params.monitor_nondim = config.monitor_nondim;

  long traj_stride = 1, cons_stride = 1;
  auto record = [&](bool force) {
    if (opts.record_trajectory && (force || st.step % traj_stride == 0)) {
      if (rep.trajectory.empty() || rep.trajectory.back().first < st.time) {
        rep.trajectory.emplace_back(st.time, st.nodes);
        thin_rows(rep.trajectory, opts.max_trajectory_rows, traj_stride);
      }
    }
    if (force || st.step % cons_stride == 0) {
      if (rep.conservation.empty() || rep.conservation.back().t < st.time) {
        rep.conservation.push_back(
            {st.time, conserved_totals(st.cells, st.nodes)});
        thin_rows(rep.conservation, opts.max_conservation_rows, cons_stride);
      }
    }
  };
  rep.conservation.push_back({0.0, rep.initial_totals});
  if (opts.record_trajectory) rep.trajectory.emplace_back(0.0, st.nodes);

  const double t_end = config.t_final;
  while (st.time < t_end * (1.0 - 1e-14)) {
    try {
      const StepInfo info =
          advance_pipeline(st, params, config.boundary, config.material,
                           t_end - st.time);
      rep.dt_series.push_back(info.dt);
    } catch (const SolverError& err) {
      fail(err.kind(), std::string(err.what()) + " [problem " + config.name +
                           ", step " + std::to_string(st.step) + ", t=" +
                           std::to_string(st.time) + "]");
    }
    record(false);
    rep.max_conservation_defect = std::max(
        rep.max_conservation_defect,
        conservation_defect(conserved_totals(st.cells, st.nodes),
                            rep.initial_totals, st.boundary_flux_integral,
                            rep.periodic));
  }
  record(true);

  rep.nodes = st.nodes;
  rep.cells = st.cells;
  rep.final_totals = conserved_totals(st.cells, st.nodes);
  rep.boundary_flux_integral = st.boundary_flux_integral;
  rep.steps = st.step;
  rep.positivity_fallbacks = st.recon_events.positivity_fallbacks;
  rep.componentwise_fallbacks = st.recon_events.componentwise_fallbacks;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

ReferenceSolution::ReferenceSolution(const RunReport& report) {
  a_ = report.nodes.front();
  b_ = report.nodes.back();
  x_ = report.centers();
  const std::size_t n = report.cells.size();
  for (auto& v : comp_) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    comp_[0][i] = report.cells[i].rho;
    comp_[1][i] = report.cells[i].mom;
    comp_[2][i] = report.cells[i].energy;
    comp_[3][i] = report.cells[i].sxx;
  }
}

void ReferenceSolution::check_range(double x) const {
  const double slack = 0.01 * (b_ - a_);
  if (x < a_ - slack || x > b_ + slack)
    fail(ErrorKind::DomainMismatch,
         "query x=" + std::to_string(x) + " outside reference domain [" +
             std::to_string(a_) + ", " + std::to_string(b_) + "]");
}

double ReferenceSolution::value(int comp, double x) const {
  check_range(x);
  const auto& xs = x_;
  const auto& vs = comp_[comp];
  if (xs.size() < 2) return vs.front();
  // Segment index with linear extrapolation of the end segments.
  std::size_t k;
  if (x <= xs.front())
    k = 0;
  else if (x >= xs.back())
    k = xs.size() - 2;
  else
    k = static_cast<std::size_t>(
            std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) -
        1;
  const double t = (x - xs[k]) / (xs[k + 1] - xs[k]);
  return vs[k] + t * (vs[k + 1] - vs[k]);
}

double ReferenceSolution::average(int comp, double xa, double xb) const {
  check_range(xa);
  check_range(xb);
  // Exact integral of the piecewise-linear interpolant: trapezoid on each
  // knot interval overlapped by [xa, xb], plus extrapolated end pieces.
  auto point = [&](double x) { return value(comp, x); };
  const auto& xs = x_;
  double acc = 0.0;
  double left = xa;
  for (std::size_t k = 0; k + 1 < xs.size() && left < xb; ++k) {
    if (xs[k + 1] <= left) continue;
    const double right = std::min(xb, xs[k + 1]);
    if (right <= left) break;
    acc += 0.5 * (point(left) + point(right)) * (right - left);
    left = right;
  }
  if (left < xb) acc += 0.5 * (point(left) + point(xb)) * (xb - left);
  return acc / (xb - xa);
}

ReferenceSolution reference_solution(const ProblemConfig& config, int n_ref) {
  ProblemConfig fine = config;
  fine.cells = n_ref;
  fine.mode = SchemeMode::ccl; // reference protocol is purely Lagrangian
  RunOptions opts;
  opts.record_trajectory = false;
  return ReferenceSolution(run(fine, opts));
}

ErrorNorms error_norms(const RunReport& report, const ReferenceSolution& ref) {
  ErrorNorms norms;
  const auto centers = report.centers();
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    const double dx = report.nodes[i + 1] - report.nodes[i];
    const double vals[4] = {report.cells[i].rho, report.cells[i].mom,
                            report.cells[i].energy, report.cells[i].sxx};
    for (int c = 0; c < 4; ++c) {
      const double diff = vals[c] - ref.value(c, centers[i]);
      norms.l1[c] += dx * std::abs(diff);
      norms.l2[c] += dx * diff * diff;
    }
  }
  for (int c = 0; c < 4; ++c) norms.l2[c] = std::sqrt(norms.l2[c]);
  return norms;
}

int worker_count() {
  if (const char* env = std::getenv("EPFLOW_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

std::vector<ConvergenceRow> convergence_table(const ProblemConfig& base,
                                              const std::vector<int>& n_list,
                                              const ReferenceSolution& ref) {
  std::vector<ConvergenceRow> rows(n_list.size());
  const int workers = std::max(1, worker_count());

  std::vector<std::future<ErrorNorms>> pending(n_list.size());
  std::size_t next = 0;
  auto launch = [&](std::size_t idx) {
    ProblemConfig cfg = base;
    cfg.cells = n_list[idx];
    pending[idx] = std::async(std::launch::async, [cfg, &ref]() {
      RunOptions opts;
      opts.record_trajectory = false;
      return error_norms(run(cfg, opts), ref);
    });
  };
  // Simple sliding window keeps at most `workers` runs in flight.
  for (; next < pending.size() && next < static_cast<std::size_t>(workers);
       ++next)
    launch(next);
  for (std::size_t done = 0; done < pending.size(); ++done) {
    rows[done].n = n_list[done];
    rows[done].err = pending[done].get();
    if (next < pending.size()) launch(next++);
  }

  append_orders(rows);
  return rows;
}

void append_orders(std::vector<ConvergenceRow>& rows) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r == 0) {
        rows[r].order_l1[c] = nan;
        rows[r].order_l2[c] = nan;
        continue;
      }
      const double ratio =
          std::log(static_cast<double>(rows[r].n) / rows[r - 1].n);
      auto order = [&](double coarse, double fine) {
        if (!(coarse > 0.0) || !(fine > 0.0)) return nan;
        return std::log(coarse / fine) / ratio;
      };
      rows[r].order_l1[c] = order(rows[r - 1].err.l1[c], rows[r].err.l1[c]);
      rows[r].order_l2[c] = order(rows[r - 1].err.l2[c], rows[r].err.l2[c]);
    }
  }
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows,
                                     const std::string& norm) {
  static const char* kComp[4] = {"rho", "rho*u", "rho*E", "s_xx"};
  std::ostringstream os;
  os << "N";
  for (const char* c : kComp) os << "," << c << " " << norm << ",order";
  os << "\n";
  for (const auto& row : rows) {
    os << row.n;
    const auto& e = (norm == "l2") ? row.err.l2 : row.err.l1;
    const auto& o = (norm == "l2") ? row.order_l2 : row.order_l1;
    for (int c = 0; c < 4; ++c) {
      os << "," << std::scientific << e[c];
      if (std::isnan(o[c]))
        os << ",n/a";
      else
        os << "," << std::defaultfloat << o[c];
    }
    os << "\n";
  }
  return os.str();
}

} // namespace epflow
