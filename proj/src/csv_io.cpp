#include "epflow/harness.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>

namespace epflow {

namespace {

std::ofstream open_csv(const std::string& dir, const std::string& name) {
  std::ofstream f(std::filesystem::path(dir) / name);
  if (!f) fail(ErrorKind::ConfigError, "cannot open output file " + name);
  f << std::setprecision(17);
  return f;
}

void write_field(const std::string& dir, const std::string& name,
                 const std::string& header, const std::vector<double>& x,
                 const std::vector<double>& v) {
  auto f = open_csv(dir, name);
  f << header << "\n";
  for (std::size_t i = 0; i < x.size(); ++i) f << x[i] << "," << v[i] << "\n";
}

} // namespace

void write_run_csvs(const RunReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto x = report.centers();
  const auto prim = report.primitives();
  const std::size_t n = prim.size();

  std::vector<double> col(n);
  auto fill = [&](auto&& get) {
    for (std::size_t i = 0; i < n; ++i) col[i] = get(prim[i]);
    return col;
  };

  write_field(out_dir, "density.csv", "x_center [m],rho [kg/m^3]", x,
              fill([](const PrimitiveState& q) { return q.rho; }));
  write_field(out_dir, "velocity.csv", "x_center [m],u [m/s]", x,
              fill([](const PrimitiveState& q) { return q.u; }));
  write_field(out_dir, "pressure.csv", "x_center [m],p [Pa]", x,
              fill([](const PrimitiveState& q) { return q.p; }));
  write_field(out_dir, "deviatoric_stress.csv", "x_center [m],s_xx [Pa]", x,
              fill([](const PrimitiveState& q) { return q.sxx; }));
  write_field(out_dir, "total_energy.csv", "x_center [m],E [J/kg]", x,
              fill([](const PrimitiveState& q) { return q.E; }));

  {
    auto f = open_csv(out_dir, "trajectory.csv");
    f << "t [s]";
    for (std::size_t j = 0; j < report.nodes.size(); ++j) f << ",x_" << j << " [m]";
    f << "\n";
    for (const auto& [t, nodes] : report.trajectory) {
      f << t;
      for (double xj : nodes) f << "," << xj;
      f << "\n";
    }
  }
  {
    auto f = open_csv(out_dir, "conservation.csv");
    f << "t [s],mass [kg/m^2],momentum [kg/(m*s)],energy [J/m^2]\n";
    for (const auto& row : report.conservation)
      f << row.t << "," << row.totals[0] << "," << row.totals[1] << ","
        << row.totals[2] << "\n";
  }
}

} // namespace epflow
