#include "epflow/reconstruction.hpp"

#include "epflow/eos.hpp"

#include <algorithm>
#include <cmath>

namespace epflow {

Vec4 matvec(const Mat4& m, const Vec4& v) {
  Vec4 out{};
  for (int i = 0; i < 4; ++i)
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
  return out;
}

Mat4 matmul(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

PrimitiveState primitive_from_conserved(const ConservedCell& q,
                                        const MaterialModel& mat) {
  if (!(q.rho > 0.0))
    fail(ErrorKind::NonPhysicalState, "conserved state has rho <= 0");
  PrimitiveState v;
  v.rho = q.rho;
  v.u = q.mom / q.rho;
  v.E = q.energy / q.rho;
  v.sxx = q.sxx;
  v.p = eos::pressure(q.rho, v.E - 0.5 * v.u * v.u, mat);
  return v;
}

ConservedCell conserved_from_primitive(const PrimitiveState& q) {
  return {q.rho, q.rho * q.u, q.rho * q.E, q.sxx};
}

namespace {

struct EosDerivs {
  double e;      // specific internal energy
  double dp_rho; // dp/drho at constant e
  double dp_e;   // dp/de at constant rho (= rho0*Gamma0)
  double gamma;  // dp_e / rho
  double sigma;  // Cauchy stress -p + sxx
  double ch2;    // isentropic dp/drho
  double c2, c;  // elastic speed
  double shear;  // 4*mu/(3*rho)
};

EosDerivs derive(const PrimitiveState& q, const MaterialModel& mat) {
  EosDerivs d;
  d.e = q.E - 0.5 * q.u * q.u;
  d.dp_rho = mat.a0 * mat.a0 * eos::hugoniot_factor_deriv(q.rho / mat.rho0, mat);
  d.dp_e = mat.rho0 * mat.gamma0;
  d.gamma = d.dp_e / q.rho;
  d.sigma = -q.p + q.sxx;
  d.shear = (4.0 / 3.0) * mat.shear_mu / q.rho;
  // dp/drho along particle paths: de = -(sigma/rho^2) drho
  d.ch2 = d.dp_rho - d.dp_e * d.sigma / (q.rho * q.rho);
  d.c2 = d.ch2 + d.shear;
  if (!(d.c2 > 0.0))
    fail(ErrorKind::NonPhysicalState, "flux Jacobian: c^2 <= 0");
  d.c = std::sqrt(d.c2);
  return d;
}

} // namespace

Mat4 flux_jacobian(const PrimitiveState& q, const MaterialModel& mat) {
  const EosDerivs d = derive(q, mat);
  const double u = q.u;
  const double G = d.gamma;
  Mat4 J{};
  J[0] = {0.0, 1.0, 0.0, 0.0};
  J[1] = {-u * u + d.dp_rho + G * (0.5 * u * u - d.e), u * (2.0 - G), G, -1.0};
  J[2] = {(G * (0.5 * u * u - d.e) - q.E + d.sigma / q.rho + d.dp_rho) * u,
          -G * u * u - d.sigma / q.rho + q.E, (1.0 + G) * u, -u};
  J[3] = {d.shear * u, -d.shear, 0.0, u};
  return J;
}

CharacteristicBasis characteristic_basis(const PrimitiveState& q,
                                         const MaterialModel& mat) {
  const EosDerivs d = derive(q, mat);
  const double u = q.u;
  const double c = d.c;
  if (!(c > 1e-8 * std::max(1.0, std::abs(u))))
    fail(ErrorKind::DegenerateEigensystem, "acoustic speed below tolerance");

  CharacteristicBasis b;
  b.eigenvalues = {u - c, u, u, u + c};

  // Right eigenvectors in conserved variables, columns ordered with the
  // eigenvalues. The two u-modes are the entropy and stress carriers.
  const double m = d.shear;
  const double H = q.E - d.sigma / q.rho; // total enthalpy with stress
  const double r_entropy2 = q.E - q.rho * d.dp_rho / d.dp_e;
  Mat4& R = b.R;
  R[0] = {1.0, 1.0, 0.0, 1.0};
  R[1] = {u - c, u, 0.0, u + c};
  R[2] = {H - u * c, r_entropy2, q.rho / d.dp_e, H + u * c};
  R[3] = {-m, 0.0, 1.0, -m};

  // Left eigenvectors: the primitive-variable inverse composed with dV/dQ,
  // all in closed form so that L*R = I to round-off.
  const double G = d.gamma;
  const double pq1 = d.dp_rho + G * (0.5 * u * u - d.e); // dp/d(rho)
  const double inv2c2 = 0.5 / d.c2;
  const double invc2 = 1.0 / d.c2;
  Mat4& L = b.L;
  L[0] = {u / (2.0 * c) + pq1 * inv2c2, -1.0 / (2.0 * c) - G * u * inv2c2,
          G * inv2c2, -inv2c2};
  L[1] = {1.0 - pq1 * invc2, G * u * invc2, -G * invc2, invc2};
  L[2] = {m * pq1 * invc2, -m * G * u * invc2, m * G * invc2, d.ch2 * invc2};
  L[3] = {-u / (2.0 * c) + pq1 * inv2c2, 1.0 / (2.0 * c) - G * u * inv2c2,
          G * inv2c2, -inv2c2};
  return b;
}

Weno3Geometry Weno3Geometry::from_widths(double hm, double h0, double hp) {
  Weno3Geometry g;
  const double rm = h0 / (hm + h0);
  const double rp = h0 / (h0 + hp);
  g.c0R[0] = -rm;
  g.c1R[0] = 1.0 + rm;
  g.c0R[1] = 1.0 - rp;
  g.c1R[1] = rp;
  g.c0L[0] = rm;
  g.c1L[0] = 1.0 - rm;
  g.c0L[1] = 1.0 + rp;
  g.c1L[1] = -rp;
  g.bfac[0] = 2.0 * rm;
  g.bfac[1] = 2.0 * rp;

  // Optimal weights reproduce the three-cell quadratic at each face; obtain
  // the quadratic's end coefficients from the primitive-cubic derivative.
  const double span = hm + h0 + hp;
  // coefficient of q_minus in the quadratic face values
  const double d3_m = (1.0 / (hm + h0)) / span;
  const double quadR_m = 1.0 - (hm + 2.0 * h0) / (hm + h0) + d3_m * (hm + h0) * h0;
  const double quadL_m = 1.0 - hm / (hm + h0) - d3_m * hm * h0;
  // coefficient of q_plus
  const double d3_p = (1.0 / (h0 + hp)) / span;
  const double quadR_p = d3_p * (hm + h0) * h0;
  const double quadL_p = -d3_p * hm * h0;

  g.dR[0] = quadR_m / g.c0R[0];
  g.dR[1] = quadR_p / g.c1R[1];
  g.dL[0] = quadL_m / g.c0L[0];
  g.dL[1] = quadL_p / g.c1L[1];
  return g;
}

std::pair<double, double> Weno3Geometry::faces(double qm, double q0,
                                               double qp) const {
  constexpr double eps = 1e-6;
  const double is0 = bfac[0] * (q0 - qm) * bfac[0] * (q0 - qm);
  const double is1 = bfac[1] * (qp - q0) * bfac[1] * (qp - q0);
  const double a0den = (eps + is0) * (eps + is0);
  const double a1den = (eps + is1) * (eps + is1);

  const double v0R = c0R[0] * qm + c1R[0] * q0;
  const double v1R = c0R[1] * q0 + c1R[1] * qp;
  const double aR0 = dR[0] / a0den;
  const double aR1 = dR[1] / a1den;
  const double right = (aR0 * v0R + aR1 * v1R) / (aR0 + aR1);

  const double v0L = c0L[0] * qm + c1L[0] * q0;
  const double v1L = c0L[1] * q0 + c1L[1] * qp;
  const double aL0 = dL[0] / a0den;
  const double aL1 = dL[1] / a1den;
  const double left = (aL0 * v0L + aL1 * v1L) / (aL0 + aL1);
  return {left, right};
}

std::pair<double, double> weno3_point_values(
    const std::array<double, 3>& avgs, const std::array<double, 3>& widths) {
  const auto g = Weno3Geometry::from_widths(widths[0], widths[1], widths[2]);
  return g.faces(avgs[0], avgs[1], avgs[2]);
}

namespace {

struct CellFaces {
  ConservedCell left, right; // reconstructed face values of one cell
};

CellFaces reconstruct_cell(std::span<const ConservedCell> cells_ext,
                           std::span<const double> widths_ext, std::size_t k,
                           const MaterialModel& mat, ReconEvents& events) {
  const auto g = Weno3Geometry::from_widths(widths_ext[k - 1], widths_ext[k],
                                            widths_ext[k + 1]);
  const ConservedCell& qm = cells_ext[k - 1];
  const ConservedCell& q0 = cells_ext[k];
  const ConservedCell& qp = cells_ext[k + 1];

  bool have_basis = true;
  CharacteristicBasis basis;
  try {
    basis = characteristic_basis(primitive_from_conserved(q0, mat), mat);
  } catch (const SolverError& err) {
    if (err.kind() != ErrorKind::DegenerateEigensystem) throw;
    have_basis = false;
    ++events.componentwise_fallbacks;
  }

  const Vec4 raw_m = {qm.rho, qm.mom, qm.energy, qm.sxx};
  const Vec4 raw_0 = {q0.rho, q0.mom, q0.energy, q0.sxx};
  const Vec4 raw_p = {qp.rho, qp.mom, qp.energy, qp.sxx};
  const Vec4 wm = have_basis ? matvec(basis.L, raw_m) : raw_m;
  const Vec4 w0 = have_basis ? matvec(basis.L, raw_0) : raw_0;
  const Vec4 wp = have_basis ? matvec(basis.L, raw_p) : raw_p;

  Vec4 face_l{}, face_r{};
  for (int comp = 0; comp < 4; ++comp) {
    const auto [l, r] = g.faces(wm[comp], w0[comp], wp[comp]);
    face_l[comp] = l;
    face_r[comp] = r;
  }
  if (have_basis) {
    face_l = matvec(basis.R, face_l);
    face_r = matvec(basis.R, face_r);
  }

  CellFaces out;
  out.left = {face_l[0], face_l[1], face_l[2], face_l[3]};
  out.right = {face_r[0], face_r[1], face_r[2], face_r[3]};
  return out;
}

// Face values outside the EOS validity window fall back to the owning
// cell's average (first-order at that face only).
PrimitiveState face_primitive(const ConservedCell& face,
                              const ConservedCell& avg,
                              const MaterialModel& mat, ReconEvents& events) {
  try {
    PrimitiveState q = primitive_from_conserved(face, mat);
    eos::sound_speed_elastic(q, mat);
    return q;
  } catch (const SolverError&) {
    ++events.positivity_fallbacks;
    return primitive_from_conserved(avg, mat);
  }
}

} // namespace

std::vector<InterfaceStates> reconstruct_interfaces(
    std::span<const ConservedCell> cells_ext, std::span<const double> widths_ext,
    const MaterialModel& mat, ReconEvents& events) {
  const std::size_t n_ext = cells_ext.size();
  const std::size_t n_interfaces = n_ext - 3; // N+1 for N interior cells

  // Interface j sits between extended cells j+1 and j+2.
  std::vector<InterfaceStates> out(n_interfaces);
  CellFaces prev = reconstruct_cell(cells_ext, widths_ext, 1, mat, events);
  for (std::size_t j = 0; j < n_interfaces; ++j) {
    const CellFaces next =
        reconstruct_cell(cells_ext, widths_ext, j + 2, mat, events);
    out[j].minus = face_primitive(prev.right, cells_ext[j + 1], mat, events);
    out[j].plus = face_primitive(next.left, cells_ext[j + 2], mat, events);
    prev = next;
  }
  return out;
}

} // namespace epflow
