#ifndef EPFLOW_RIEMANN_HPP
#define EPFLOW_RIEMANN_HPP

#include "epflow/eos.hpp"
#include "epflow/material.hpp"
#include "epflow/state.hpp"

namespace epflow {

/// Four constant states separated by the left-going wave (speed uL - cL),
/// the contact (speed u_star) and the right-going wave (speed uR + cR).
/// Both star states share the contact velocity; the deviatoric stress may
/// jump across the contact.
struct RiemannFan {
  PrimitiveState qL, qLstar, qRstar, qR;
  double u_star = 0.0;
  double p_star = 0.0;
  double sL = 0.0; // uL - cL at the left data state
  double sR = 0.0; // uR + cR at the right data state
};

enum class WaveFamily { left, right };

/// State connected to `from` through a simple wave of the given family,
/// parameterized by pressure. Integrates
///   drho/dp = 1/ch^2,  du/dp = -+ c/(rho*ch^2),  dsxx/dp = -(4mu/3)/(rho*ch^2)
/// with classical RK4 (left family takes the minus sign), where ch^2 is the
/// isentropic dp/drho and c the elastic speed. The velocity relation reduces
/// to the familiar du = -+ dp/(rho c) when mu = 0. The deviatoric increment
/// is Hooke's law rewritten along particle paths, dsxx = -(4mu/3) drho/rho,
/// and stays clamped at the von Mises bound.
struct ConnectResult {
  PrimitiveState state;
  double du_dp = 0.0; // slope of the connected velocity at p_target
};

ConnectResult rarefaction_connect(const PrimitiveState& from, double p_target,
                                  WaveFamily family, const MaterialModel& mat);

/// Two-rarefaction Riemann solver with elastic waves: finds p_star with
/// u*_left(p_star) = u*_right(p_star) by safeguarded Newton iteration on the
/// (strictly decreasing) velocity mismatch. States whose jump is below the
/// linearization threshold take a closed-form acoustic solve instead; the
/// two branches agree to well below the 1e-10 solver tolerance.
RiemannFan trrse_solve(const PrimitiveState& qL, const PrimitiveState& qR,
                       const MaterialModel& mat);

/// Godunov value sampled at the interface trajectory speed xdot:
///   qL      for xdot <= uL - cL
///   qLstar  for uL - cL < xdot <= u_star
///   qRstar  for u_star < xdot <= uR + cR
///   qR      for xdot > uR + cR
const PrimitiveState& godunov_sample(const RiemannFan& fan, double xdot);

} // namespace epflow

#endif
