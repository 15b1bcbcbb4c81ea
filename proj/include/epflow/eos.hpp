#ifndef EPFLOW_EOS_HPP
#define EPFLOW_EOS_HPP

#include "epflow/material.hpp"
#include "epflow/state.hpp"

namespace epflow::eos {

//
// Mie-Grueneisen equation of state,
//
//     p(rho, e) = rho0 * a0^2 * f(eta) + rho0 * Gamma0 * e,
//
// with compression ratio eta = rho / rho0 and the Hugoniot reference
// function
//
//                (eta - 1) * [eta - Gamma0 * (eta - 1) / 2]
//     f(eta) =  --------------------------------------------- .
//                       [eta - s * (eta - 1)]^2
//
// The elastic strain energy is not part of the model. The denominator
// vanishes at eta = s/(s-1), which is where the linear us-up Hugoniot fit
// loses meaning; states are rejected well before that (see eta bounds).
//

// Validity window for the compression ratio. Outside of it the Hugoniot fit
// is extrapolating into nonsense, so we reject instead.
inline constexpr double kEtaMin = 0.5;
inline constexpr double kEtaMax = 2.0;

/// f(eta). Throws DenominatorSingular near the Hugoniot pole and
/// NonPhysicalState outside the validity window.
double hugoniot_factor(double eta, const MaterialModel& mat);

/// Closed-form df/deta (quotient rule). Same guards as hugoniot_factor.
double hugoniot_factor_deriv(double eta, const MaterialModel& mat);

/// p = rho0*a0^2*f(rho/rho0) + rho0*Gamma0*e
double pressure(double rho, double e, const MaterialModel& mat);

/// Algebraic inverse of pressure(): e = (p - rho0*a0^2*f) / (rho0*Gamma0).
double energy_from_pressure(double rho, double p, const MaterialModel& mat);

/// Squared hydrodynamic sound speed,
///   a^2 = a0^2 * f'(eta) + (p/rho^2) * rho0 * Gamma0 .
/// Throws NonPhysicalState when the result is not positive.
double sound_speed_sq_hydro(double rho, double p, const MaterialModel& mat);

/// Elastic characteristic speed,
///   c = sqrt(a^2 - (rho0/rho^2)*Gamma0*sxx + (4/3)*mu/rho),
/// the edge wave speed of the hyperbolic system with shear stiffness.
double sound_speed_elastic(const PrimitiveState& q, const MaterialModel& mat);

/// c^2 without the shear term, a^2 - (rho0/rho^2)*Gamma0*sxx. This is the
/// slope dp/drho along the isentrope of the coupled system and is what the
/// rarefaction ODEs divide by.
double sound_speed_sq_isentropic(double rho, double p, double sxx,
                                 const MaterialModel& mat);

} // namespace epflow::eos

#endif
