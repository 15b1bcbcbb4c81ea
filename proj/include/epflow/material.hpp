#ifndef EPFLOW_MATERIAL_HPP
#define EPFLOW_MATERIAL_HPP

#include "epflow/errors.hpp"

namespace epflow {

/// EOS and strength parameters for one material, SI units throughout.
///
/// The Hugoniot slope is named hugoniot_slope_s to avoid the collision with
/// the deviatoric stress component, which is also conventionally written s.
struct MaterialModel {
  double rho0;             // reference density [kg/m^3]
  double a0;               // reference (bulk) sound speed [m/s]
  double hugoniot_slope_s; // linear shock-particle speed slope [-]
  double gamma0;           // Grueneisen coefficient [-]
  double shear_mu;         // shear modulus [Pa]
  double yield_Y0;         // yield strength in simple tension [Pa]

  void validate() const {
    if (!(rho0 > 0.0)) fail(ErrorKind::ConfigError, "rho0 must be positive");
    if (!(a0 > 0.0)) fail(ErrorKind::ConfigError, "a0 must be positive");
    if (!(shear_mu >= 0.0)) fail(ErrorKind::ConfigError, "shear_mu must be >= 0");
    if (!(yield_Y0 > 0.0)) fail(ErrorKind::ConfigError, "yield_Y0 must be positive");
    if (!(hugoniot_slope_s >= 1.0))
      fail(ErrorKind::ConfigError, "hugoniot_slope_s must be >= 1");
  }
};

namespace materials {

// Copper, used by the smooth accuracy test (soft shear, effectively
// non-yielding) and the piston problem (stiff shear, low yield).
inline MaterialModel copper_soft() {
  return {8930.0, 3940.0, 1.49, 2.0, 4.5e9, 90.0e9};
}
inline MaterialModel copper() {
  return {8930.0, 3940.0, 1.49, 2.0, 45.0e9, 90.0e6};
}
inline MaterialModel aluminium() {
  return {2785.0, 5328.0, 1.338, 2.0, 27.6e9, 300.0e6};
}

} // namespace materials

} // namespace epflow

#endif
