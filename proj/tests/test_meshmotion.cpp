#include "doctest.h"
#include "epflow/meshmotion.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace epflow;

namespace {

std::vector<double> uniform_nodes(int n, double a = 0.0, double b = 1.0) {
  std::vector<double> x(n + 1);
  for (int j = 0; j <= n; ++j) x[j] = a + (b - a) * j / static_cast<double>(n);
  return x;
}

} // namespace

TEST_CASE("lagrangian_predict") {
  const auto x = uniform_nodes(8);
  SUBCASE("zero velocity leaves the mesh") {
    const std::vector<double> u(9, 0.0);
    CHECK(lagrangian_predict(x, u, 0.1) == x);
  }
  SUBCASE("constant velocity translates rigidly") {
    const std::vector<double> u(9, 2.0);
    const auto out = lagrangian_predict(x, u, 0.25);
    for (int j = 0; j <= 8; ++j)
      CHECK(out[j] == doctest::Approx(x[j] + 0.5).epsilon(1e-15));
  }
  SUBCASE("linear velocity u = x scales the mesh") {
    const auto out = lagrangian_predict(x, x, 0.3);
    for (int j = 0; j <= 8; ++j)
      CHECK(out[j] == doctest::Approx(1.3 * x[j]).epsilon(1e-14));
  }
  SUBCASE("crossing nodes raise MeshTangled") {
    std::vector<double> u(9, 0.0);
    u[4] = -1.0; // node 4 jumps left past node 3
    try {
      (void)lagrangian_predict(x, u, 1.0);
      CHECK(false);
    } catch (const SolverError& err) {
      CHECK(err.kind() == ErrorKind::MeshTangled);
    }
  }
}

TEST_CASE("monitor_raw") {
  const int n = 10;
  const auto x = uniform_nodes(n);

  SUBCASE("uniform fields give a unit monitor") {
    std::vector<ConservedCell> cells(n, {2.0, 0.0, 0.0, 5.0});
    const MonitorField m = monitor_raw(cells, x, x);
    for (double v : m.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("single density ramp peaks at the ramp") {
    std::vector<ConservedCell> cells(n, {1.0, 0.0, 0.0, 0.0});
    for (int i = n / 2; i < n; ++i) cells[i].rho = 1.5;
    const MonitorField m = monitor_raw(cells, x, x);
    // gradient between centers of cells n/2-1 and n/2: 0.5 / (1/n)
    const double g = 0.5 * n;
    CHECK(m.values[n / 2] == doctest::Approx(std::sqrt(1.0 + g * g)).epsilon(1e-13));
    CHECK(m.values[1] == doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("alpha balances equal-magnitude ramps") {
    std::vector<ConservedCell> cells(n, {1.0, 0.0, 0.0, 0.0});
    for (int i = 2; i < n; ++i) cells[i].rho = 1.4; // rho ramp at node 2
    for (int i = 7; i < n; ++i) cells[i].sxx = 9e9; // sxx ramp at node 7
    const MonitorField m = monitor_raw(cells, x, x);
    CHECK(m.values[2] == doctest::Approx(m.values[7]).epsilon(1e-12));
  }

  SUBCASE("density transport onto the predicted mesh conserves cell mass") {
    std::vector<ConservedCell> cells(n, {3.0, 0.0, 0.0, 0.0});
    cells[4].rho = 4.0;
    std::vector<double> u(n + 1);
    for (int j = 0; j <= n; ++j) u[j] = 0.2 * std::sin(2.0 * M_PI * j / n);
    const auto lag = lagrangian_predict(x, u, 0.05);
    // flat sxx, so the monitor reduces to the density term; reconstruct the
    // transported density from the monitor values at the two ramp nodes
    const MonitorField m = monitor_raw(cells, x, lag);
    const double rho4_lag = cells[4].rho * (x[5] - x[4]) / (lag[5] - lag[4]);
    const double rho3_lag = cells[3].rho * (x[4] - x[3]) / (lag[4] - lag[3]);
    const double centers =
        0.5 * (lag[5] + lag[6]) * 0.5; // placeholder to silence unused warn
    (void)centers;
    const double g = (rho4_lag - rho3_lag) /
                     (0.5 * (lag[4] + lag[5]) - 0.5 * (lag[3] + lag[4]));
    CHECK(m.values[4] == doctest::Approx(std::sqrt(1.0 + g * g)).epsilon(1e-12));
  }
}

TEST_CASE("monitor_scale") {
  MonitorHistory hist;

  SUBCASE("flat monitor passes through") {
    MonitorField m;
    m.values.assign(5, 3.3);
    const MonitorField out = monitor_scale(m, hist);
    CHECK(out.values == m.values);
    CHECK(hist.max_ratio == 1.0);
  }

  SUBCASE("ratio capped at 10") {
    MonitorField m;
    m.values = {1.0, 100.0, 1.0, 50.0};
    const MonitorField out = monitor_scale(m, hist);
    const double mx = *std::max_element(out.values.begin(), out.values.end());
    const double mn = *std::min_element(out.values.begin(), out.values.end());
    CHECK(mx / mn == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(hist.max_ratio == doctest::Approx(100.0));
  }

  SUBCASE("ratio below cap is preserved on the first step") {
    MonitorField m;
    m.values = {1.0, 4.0, 2.0};
    const MonitorField out = monitor_scale(m, hist);
    const double mx = *std::max_element(out.values.begin(), out.values.end());
    const double mn = *std::min_element(out.values.begin(), out.values.end());
    CHECK(mx / mn == doctest::Approx(4.0).epsilon(1e-13));
  }

  SUBCASE("history keeps the largest past ratio") {
    MonitorField first;
    first.values = {1.0, 8.0};
    (void)monitor_scale(first, hist);
    MonitorField second;
    second.values = {1.0, 2.0};
    const MonitorField out = monitor_scale(second, hist);
    // M_critic = min(10, 8) * 1 -> the mild field is stretched to ratio 8
    const double mx = *std::max_element(out.values.begin(), out.values.end());
    CHECK(mx == doctest::Approx(8.0).epsilon(1e-13));
  }
}

TEST_CASE("monitor_smooth") {
  SUBCASE("constant field is a fixed point") {
    MonitorField m;
    m.values.assign(12, 2.5);
    monitor_smooth(m, 7);
    for (double v : m.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-15));
  }

  SUBCASE("one sweep halves an interior spike") {
    MonitorField m;
    m.values.assign(9, 1.0);
    const double h = 0.6;
    m.values[4] = 1.0 + h;
    monitor_smooth(m, 1);
    CHECK(m.values[4] == doctest::Approx(1.0 + h / 2.0).epsilon(1e-14));
    CHECK(m.values[3] == doctest::Approx(1.0 + h / 4.0).epsilon(1e-14));
    CHECK(m.values[5] == doctest::Approx(1.0 + h / 4.0).epsilon(1e-14));
  }

  SUBCASE("bounds contract and compact bumps keep their mean") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> v(1.0, 5.0);
    MonitorField m;
    m.values.assign(20, 1.0);
    for (int j = 4; j <= 15; ++j) m.values[j] = v(rng);
    const double sum0 =
        std::accumulate(m.values.begin(), m.values.end(), 0.0);
    double lo = *std::min_element(m.values.begin(), m.values.end());
    double hi = *std::max_element(m.values.begin(), m.values.end());
    for (int s = 0; s < 3; ++s) {
      monitor_smooth(m, 1);
      const double lo2 = *std::min_element(m.values.begin(), m.values.end());
      const double hi2 = *std::max_element(m.values.begin(), m.values.end());
      CHECK(lo2 >= lo - 1e-15);
      CHECK(hi2 <= hi + 1e-15);
      lo = lo2;
      hi = hi2;
    }
    const double sum1 =
        std::accumulate(m.values.begin(), m.values.end(), 0.0);
    CHECK(sum1 == doctest::Approx(sum0).epsilon(1e-12));
  }

  SUBCASE("default sweep count follows the N/40 rule") {
    CHECK(default_sweeps(100) == 3);
    CHECK(default_sweeps(400) == 10);
    CHECK(default_sweeps(8) == 1);
  }
}

namespace {

// Dense Gaussian elimination on the same backward-Euler system, as an
// independent linear-algebra oracle.
std::vector<double> mmpde_dense_oracle(const std::vector<double>& xl,
                                       const MonitorField& monitor, double tau,
                                       double dt) {
  const int nn = static_cast<int>(xl.size());
  const int n = nn - 1;
  std::vector<std::vector<double>> a(nn, std::vector<double>(nn, 0.0));
  std::vector<double> b(nn, 0.0);
  std::vector<double> center(n), mc(n);
  for (int i = 0; i < n; ++i) {
    center[i] = 0.5 * (xl[i] + xl[i + 1]);
    mc[i] = 0.5 * (monitor.values[i] + monitor.values[i + 1]);
  }
  a[0][0] = 1.0;
  b[0] = 0.0;
  a[n][n] = 1.0;
  b[n] = 1.0;
  for (int j = 1; j < n; ++j) {
    const double lam = monitor.values[j] * dt / (tau * (center[j] - center[j - 1]));
    const double cr = lam / (mc[j] * (xl[j + 1] - xl[j]));
    const double cl = lam / (mc[j - 1] * (xl[j] - xl[j - 1]));
    a[j][j - 1] = -cl;
    a[j][j] = 1.0 + cl + cr;
    a[j][j + 1] = -cr;
    b[j] = static_cast<double>(j) / n;
  }
  // plain partial-pivot elimination
  for (int col = 0; col < nn; ++col) {
    int piv = col;
    for (int r = col + 1; r < nn; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < nn; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c2 = col; c2 < nn; ++c2) a[r][c2] -= f * a[col][c2];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> xi(nn);
  for (int r = nn - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c2 = r + 1; c2 < nn; ++c2) acc -= a[r][c2] * xi[c2];
    xi[r] = acc / a[r][r];
  }
  // invert the correspondence like the implementation does
  std::vector<double> out(nn);
  out[0] = xl[0];
  out[n] = xl[n];
  for (int j = 1; j < n; ++j) {
    const double target = static_cast<double>(j) / n;
    int k = 0;
    while (k + 2 < nn && xi[k + 1] < target) ++k;
    const double t = (target - xi[k]) / (xi[k + 1] - xi[k]);
    out[j] = xl[k] + t * (xl[k + 1] - xl[k]);
  }
  return out;
}

} // namespace

TEST_CASE("mmpde_solve") {
  const int n = 24;
  const auto x = uniform_nodes(n);

  SUBCASE("uniform mesh and flat monitor are a fixed point") {
    MonitorField m;
    m.values.assign(n + 1, 2.0);
    const auto out = mmpde_solve(x, m, 0.01, 1e-3);
    for (int j = 0; j <= n; ++j)
      CHECK(out[j] == doctest::Approx(x[j]).epsilon(1e-13));
  }

  SUBCASE("flat monitor pulls a nonuniform mesh toward uniform") {
    std::vector<double> skew(n + 1);
    for (int j = 0; j <= n; ++j) {
      const double xi = static_cast<double>(j) / n;
      skew[j] = xi * xi * (3.0 - 2.0 * xi); // smooth, clustered at the middle
    }
    MonitorField m;
    m.values.assign(n + 1, 1.0);
    const auto out = mmpde_solve(skew, m, 0.01, 1.0);
    auto width_var = [&](const std::vector<double>& nodes) {
      double mean = (nodes.back() - nodes.front()) / n, acc = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = nodes[i + 1] - nodes[i] - mean;
        acc += d * d;
      }
      return acc;
    };
    CHECK(width_var(out) < width_var(skew));
  }

  SUBCASE("spike monitor shrinks cells at the spike, toward equidistribution") {
    MonitorField m;
    m.values.assign(n + 1, 1.0);
    for (int j = 10; j <= 14; ++j) m.values[j] = 6.0;
    const auto out = mmpde_solve(x, m, 0.01, 5e-2);
    const double w_spike = out[13] - out[12];
    const double w_far = out[3] - out[2];
    CHECK(w_spike < w_far);

    // target mesh from the equidistribution relation M dx = const
    std::vector<double> inv_m(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      inv_m[i] = 1.0 / (0.5 * (m.values[i] + m.values[i + 1]));
      total += inv_m[i];
    }
    std::vector<double> x_eq(n + 1, 0.0);
    for (int i = 0; i < n; ++i) x_eq[i + 1] = x_eq[i] + inv_m[i] / total;
    // nodes move toward the equidistributed mesh
    double along = 0.0;
    for (int j = 0; j <= n; ++j) along += (out[j] - x[j]) * (x_eq[j] - x[j]);
    CHECK(along > 0.0);
    // with dt >> tau the solve is close to equilibrium: spiked cells end up
    // several times narrower than far-field ones
    CHECK(w_far / w_spike > 2.0);
  }

  SUBCASE("matches a dense linear-algebra oracle") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> mv(0.5, 4.0);
    MonitorField m;
    m.values.resize(n + 1);
    for (auto& v : m.values) v = mv(rng);
    std::vector<double> skew(n + 1);
    for (int j = 0; j <= n; ++j) {
      const double xi = static_cast<double>(j) / n;
      skew[j] = xi + 0.2 * xi * (1.0 - xi);
    }
    const auto mine = mmpde_solve(skew, m, 0.01, 2e-2);
    const auto ref = mmpde_dense_oracle(skew, m, 0.01, 2e-2);
    for (int j = 0; j <= n; ++j)
      CHECK(mine[j] == doctest::Approx(ref[j]).epsilon(1e-12));
  }
}

TEST_CASE("relative_velocity") {
  const int n = 12;
  const auto x = uniform_nodes(n);
  std::vector<double> u(n + 1);
  for (int j = 0; j <= n; ++j) u[j] = std::sin(j * 0.7);
  const double dtp = 1e-3;

  SUBCASE("new mesh equal to the Lagrangian prediction gives w = 0") {
    const auto lag = lagrangian_predict(x, u, dtp);
    const auto w = relative_velocity(x, lag, u, dtp);
    CHECK(w.front() == 0.0);
    CHECK(w.back() == 0.0);
    for (double v : w) CHECK(std::abs(v) <= 1e-10);
  }

  SUBCASE("frozen mesh recovers the Eulerian limit w = u") {
    const auto w = relative_velocity(x, x, u, dtp);
    for (int j = 1; j < n; ++j)
      CHECK(w[j] == doctest::Approx(u[j]).epsilon(1e-15));
    CHECK(w.front() == 0.0);
    CHECK(w.back() == 0.0);
  }
}
