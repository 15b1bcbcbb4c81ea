#include "epflow/riemann.hpp"

#include "epflow/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace epflow {

namespace {

struct CurveRhs {
  double drho_dp;
  double du_dp;
  double ds_dp;
};

// Simple-wave ODE right-hand side at (rho, p, sxx).
CurveRhs curve_rhs(double rho, double p, double sxx, double sign,
                   const MaterialModel& mat) {
  const double ch2 = eos::sound_speed_sq_isentropic(rho, p, sxx, mat);
  const double c2 = ch2 + (4.0 / 3.0) * mat.shear_mu / rho;
  if (!(c2 > 0.0))
    fail(ErrorKind::NonPhysicalState, "rarefaction curve: c^2 <= 0");
  const double c = std::sqrt(c2);
  const double inv = 1.0 / (rho * ch2);
  return {1.0 / ch2, sign * c * inv, -(4.0 / 3.0) * mat.shear_mu * inv};
}

int substep_count(double rel_jump) {
  if (rel_jump > 3e-3) return 64;
  if (rel_jump > 1e-5) return 16;
  return 4;
}

} // namespace

ConnectResult rarefaction_connect(const PrimitiveState& from, double p_target,
                                  WaveFamily family, const MaterialModel& mat) {
  if (!std::isfinite(p_target))
    fail(ErrorKind::IntegrationFailure, "rarefaction_connect: p_target not finite");

  const double sign = (family == WaveFamily::left) ? -1.0 : 1.0;
  double rho = from.rho;
  double u = from.u;
  double s = from.sxx;

  const double pscale =
      std::max({std::abs(from.p), std::abs(p_target), 1e-9 * mat.rho0 * mat.a0 * mat.a0});
  const int n = substep_count(std::abs(p_target - from.p) / pscale);
  const double h = (p_target - from.p) / n;

  for (int k = 0; k < n; ++k) {
    const double p = from.p + k * h;
    const CurveRhs k1 = curve_rhs(rho, p, s, sign, mat);
    const CurveRhs k2 = curve_rhs(rho + 0.5 * h * k1.drho_dp, p + 0.5 * h,
                                  s + 0.5 * h * k1.ds_dp, sign, mat);
    const CurveRhs k3 = curve_rhs(rho + 0.5 * h * k2.drho_dp, p + 0.5 * h,
                                  s + 0.5 * h * k2.ds_dp, sign, mat);
    const CurveRhs k4 = curve_rhs(rho + h * k3.drho_dp, p + h,
                                  s + h * k3.ds_dp, sign, mat);
    rho += (h / 6.0) * (k1.drho_dp + 2.0 * k2.drho_dp + 2.0 * k3.drho_dp + k4.drho_dp);
    u += (h / 6.0) * (k1.du_dp + 2.0 * k2.du_dp + 2.0 * k3.du_dp + k4.du_dp);
    s += (h / 6.0) * (k1.ds_dp + 2.0 * k2.ds_dp + 2.0 * k3.ds_dp + k4.ds_dp);
    s = von_mises_limit(s, mat.yield_Y0);
    if (!(rho > 0.0) || !std::isfinite(rho) || !std::isfinite(u))
      fail(ErrorKind::IntegrationFailure, "rarefaction_connect: state diverged");
  }

  ConnectResult out;
  out.state.rho = rho;
  out.state.u = u;
  out.state.p = p_target;
  out.state.sxx = s;
  out.state.E = eos::energy_from_pressure(rho, p_target, mat) + 0.5 * u * u;
  out.du_dp = curve_rhs(rho, p_target, s, sign, mat).du_dp;
  return out;
}

namespace {

struct MismatchEval {
  double g;     // u*_left - u*_right
  double dg_dp; // strictly negative
  ConnectResult left, right;
};

std::optional<MismatchEval> try_mismatch(const PrimitiveState& qL,
                                         const PrimitiveState& qR, double p,
                                         const MaterialModel& mat) {
  try {
    MismatchEval ev;
    ev.left = rarefaction_connect(qL, p, WaveFamily::left, mat);
    ev.right = rarefaction_connect(qR, p, WaveFamily::right, mat);
    ev.g = ev.left.state.u - ev.right.state.u;
    ev.dg_dp = ev.left.du_dp - ev.right.du_dp;
    return ev;
  } catch (const SolverError&) {
    return std::nullopt;
  }
}

PrimitiveState star_state(const PrimitiveState& connected, double u_star,
                          double p_star, const MaterialModel& mat) {
  PrimitiveState q = connected;
  q.u = u_star;
  q.E = eos::energy_from_pressure(q.rho, p_star, mat) + 0.5 * u_star * u_star;
  return q;
}

RiemannFan assemble_fan(const PrimitiveState& qL, const PrimitiveState& qR,
                        double cL, double cR, const PrimitiveState& starL,
                        const PrimitiveState& starR, double u_star,
                        double p_star) {
  RiemannFan fan;
  fan.qL = qL;
  fan.qR = qR;
  fan.qLstar = starL;
  fan.qRstar = starR;
  fan.u_star = u_star;
  fan.p_star = p_star;
  fan.sL = qL.u - cL;
  fan.sR = qR.u + cR;
  return fan;
}

// Relative size of the state change implied by moving a state to pressure p.
double curve_stretch(const PrimitiveState& q, double p, double ch2) {
  return std::abs(p - q.p) / (q.rho * ch2);
}

} // namespace

RiemannFan trrse_solve(const PrimitiveState& qL, const PrimitiveState& qR,
                       const MaterialModel& mat) {
  const double cL = eos::sound_speed_elastic(qL, mat);
  const double cR = eos::sound_speed_elastic(qR, mat);
  const double chL2 = eos::sound_speed_sq_isentropic(qL.rho, qL.p, qL.sxx, mat);
  const double chR2 = eos::sound_speed_sq_isentropic(qR.rho, qR.p, qR.sxx, mat);

  // Acoustic star estimate; also the answer when the jump is tiny.
  const double zL = qL.rho * cL;
  const double zR = qR.rho * cR;
  const double p_lin =
      (zR * qL.p + zL * qR.p + zL * zR * (qL.u - qR.u)) / (zL + zR);
  const double u_lin = (zL * qL.u + zR * qR.u + (qL.p - qR.p)) / (zL + zR);

  const double stretch = std::max(curve_stretch(qL, p_lin, chL2),
                                  curve_stretch(qR, p_lin, chR2));
  if (stretch < 1e-7) {
    PrimitiveState starL = qL;
    starL.rho = qL.rho + (p_lin - qL.p) / chL2;
    starL.sxx = von_mises_limit(
        qL.sxx - (4.0 / 3.0) * mat.shear_mu * (p_lin - qL.p) / (qL.rho * chL2),
        mat.yield_Y0);
    starL = star_state(starL, u_lin, p_lin, mat);
    PrimitiveState starR = qR;
    starR.rho = qR.rho + (p_lin - qR.p) / chR2;
    starR.sxx = von_mises_limit(
        qR.sxx - (4.0 / 3.0) * mat.shear_mu * (p_lin - qR.p) / (qR.rho * chR2),
        mat.yield_Y0);
    starR = star_state(starR, u_lin, p_lin, mat);
    return assemble_fan(qL, qR, cL, cR, starL, starR, u_lin, p_lin);
  }

  const double tol_u = 1e-10 * std::max({cL, cR, std::abs(qL.u), std::abs(qR.u)});
  const double pscale =
      std::max({std::abs(qL.p), std::abs(qR.p), qL.rho * chL2, qR.rho * chR2});

  // Safeguarded Newton on the contact-velocity mismatch. g is strictly
  // decreasing in p, so a sign-based bracket [p_lo, p_hi] (g>0 at p_lo,
  // g<0 at p_hi) can be grown until it holds the root.
  double p = 0.5 * (qL.p + qR.p);
  std::optional<double> p_lo, p_hi;
  double probe = std::max(std::abs(p), 0.05 * pscale);
  std::optional<MismatchEval> ev = try_mismatch(qL, qR, p, mat);

  for (int it = 0; it < 100; ++it) {
    if (!ev) {
      // Trial state left the EOS validity window; retreat halfway toward
      // the known-good side of the bracket (or toward the data pressures).
      const double anchor =
          p_lo ? *p_lo : (p_hi ? *p_hi : 0.5 * (qL.p + qR.p));
      p = 0.5 * (p + anchor);
      ev = try_mismatch(qL, qR, p, mat);
      continue;
    }

    if (std::abs(ev->g) <= tol_u) {
      const double u_star = 0.5 * (ev->left.state.u + ev->right.state.u);
      return assemble_fan(qL, qR, cL, cR,
                          star_state(ev->left.state, u_star, p, mat),
                          star_state(ev->right.state, u_star, p, mat), u_star,
                          p);
    }

    if (ev->g > 0.0)
      p_lo = p_lo ? std::max(*p_lo, p) : p;
    else
      p_hi = p_hi ? std::min(*p_hi, p) : p;

    double p_next;
    if (ev->dg_dp < 0.0) {
      p_next = p - ev->g / ev->dg_dp;
    } else {
      p_next = p; // forces the bracket/probe logic below
    }

    if (p_lo && p_hi) {
      if (!(p_next > *p_lo && p_next < *p_hi)) p_next = 0.5 * (*p_lo + *p_hi);
    } else if (ev->g > 0.0) {
      // Root lies above p; march upward at least one probe step.
      if (!(p_next > p)) p_next = p + probe;
      p_next = std::min(p_next, p + 64.0 * probe);
      probe *= 2.0;
    } else {
      if (!(p_next < p)) p_next = p - probe;
      p_next = std::max(p_next, p - 64.0 * probe);
      probe *= 2.0;
    }

    if (std::abs(p_next - p) <= 1e-14 * std::max(std::abs(p), pscale) && p_lo &&
        p_hi) {
      // Pressure interval exhausted; accept the midpoint solution.
      const double u_star = 0.5 * (ev->left.state.u + ev->right.state.u);
      return assemble_fan(qL, qR, cL, cR,
                          star_state(ev->left.state, u_star, p, mat),
                          star_state(ev->right.state, u_star, p, mat), u_star,
                          p);
    }

    p = p_next;
    ev = try_mismatch(qL, qR, p, mat);
  }

  fail(ErrorKind::NoConvergence,
       "trrse_solve: no contact pressure after 100 iterations (uL=" +
           std::to_string(qL.u) + ", uR=" + std::to_string(qR.u) + ")");
}

const PrimitiveState& godunov_sample(const RiemannFan& fan, double xdot) {
  if (xdot <= fan.sL) return fan.qL;
  if (xdot <= fan.u_star) return fan.qLstar;
  if (xdot <= fan.sR) return fan.qRstar;
  return fan.qR;
}

} // namespace epflow
