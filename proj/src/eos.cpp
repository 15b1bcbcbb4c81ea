#include "epflow/eos.hpp"

#include <cmath>
#include <string>

namespace epflow {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::DenominatorSingular: return "DenominatorSingular";
    case ErrorKind::NonPhysicalState: return "NonPhysicalState";
    case ErrorKind::DegenerateCell: return "DegenerateCell";
    case ErrorKind::DegenerateEigensystem: return "DegenerateEigensystem";
    case ErrorKind::IntegrationFailure: return "IntegrationFailure";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MeshTangled: return "MeshTangled";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
  }
  return "UnknownError";
}

namespace eos {

namespace {

inline void check_eta(double eta, const MaterialModel& mat) {
  if (!(eta > kEtaMin && eta < kEtaMax))
    fail(ErrorKind::NonPhysicalState,
         "compression ratio eta=" + std::to_string(eta) +
             " outside validity window [0.5, 2]");
  const double denom = eta - mat.hugoniot_slope_s * (eta - 1.0);
  if (std::abs(denom) < 1e-12 * eta)
    fail(ErrorKind::DenominatorSingular,
         "Hugoniot denominator vanishes at eta=" + std::to_string(eta));
}

} // namespace

double hugoniot_factor(double eta, const MaterialModel& mat) {
  check_eta(eta, mat);
  const double g = mat.gamma0;
  const double s = mat.hugoniot_slope_s;
  const double denom = eta - s * (eta - 1.0);
  const double num = (eta - 1.0) * (eta - 0.5 * g * (eta - 1.0));
  return num / (denom * denom);
}

double hugoniot_factor_deriv(double eta, const MaterialModel& mat) {
  check_eta(eta, mat);
  const double g = mat.gamma0;
  const double s = mat.hugoniot_slope_s;
  const double d = eta - s * (eta - 1.0); // d' = 1 - s
  const double n = (eta - 1.0) * (eta - 0.5 * g * (eta - 1.0));
  const double np = (eta - 0.5 * g * (eta - 1.0)) + (eta - 1.0) * (1.0 - 0.5 * g);
  // (n / d^2)' = n'/d^2 - 2 n d'/d^3
  return np / (d * d) - 2.0 * n * (1.0 - s) / (d * d * d);
}

double pressure(double rho, double e, const MaterialModel& mat) {
  if (!(rho > 0.0)) fail(ErrorKind::NonPhysicalState, "pressure: rho <= 0");
  const double eta = rho / mat.rho0;
  return mat.rho0 * mat.a0 * mat.a0 * hugoniot_factor(eta, mat) +
         mat.rho0 * mat.gamma0 * e;
}

double energy_from_pressure(double rho, double p, const MaterialModel& mat) {
  if (!(rho > 0.0))
    fail(ErrorKind::NonPhysicalState, "energy_from_pressure: rho <= 0");
  if (mat.gamma0 == 0.0)
    fail(ErrorKind::ConfigError, "energy_from_pressure: gamma0 == 0");
  const double eta = rho / mat.rho0;
  return (p - mat.rho0 * mat.a0 * mat.a0 * hugoniot_factor(eta, mat)) /
         (mat.rho0 * mat.gamma0);
}

double sound_speed_sq_hydro(double rho, double p, const MaterialModel& mat) {
  if (!(rho > 0.0))
    fail(ErrorKind::NonPhysicalState, "sound_speed_sq_hydro: rho <= 0");
  const double eta = rho / mat.rho0;
  const double a2 = mat.a0 * mat.a0 * hugoniot_factor_deriv(eta, mat) +
                    (p / (rho * rho)) * mat.rho0 * mat.gamma0;
  if (!(a2 > 0.0))
    fail(ErrorKind::NonPhysicalState, "hydrodynamic sound speed squared <= 0");
  return a2;
}

double sound_speed_sq_isentropic(double rho, double p, double sxx,
                                 const MaterialModel& mat) {
  const double a2 = sound_speed_sq_hydro(rho, p, mat);
  const double ch2 = a2 - (mat.rho0 / (rho * rho)) * mat.gamma0 * sxx;
  if (!(ch2 > 0.0))
    fail(ErrorKind::NonPhysicalState, "isentropic sound speed squared <= 0");
  return ch2;
}

double sound_speed_elastic(const PrimitiveState& q, const MaterialModel& mat) {
  const double ch2 = sound_speed_sq_isentropic(q.rho, q.p, q.sxx, mat);
  const double c2 = ch2 + (4.0 / 3.0) * mat.shear_mu / q.rho;
  if (!(c2 > 0.0))
    fail(ErrorKind::NonPhysicalState, "elastic sound speed squared <= 0");
  return std::sqrt(c2);
}

} // namespace eos
} // namespace epflow
