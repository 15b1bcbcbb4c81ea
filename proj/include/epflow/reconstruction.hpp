#ifndef EPFLOW_RECONSTRUCTION_HPP
#define EPFLOW_RECONSTRUCTION_HPP

#include "epflow/material.hpp"
#include "epflow/state.hpp"

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace epflow {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

Vec4 matvec(const Mat4& m, const Vec4& v);
Mat4 matmul(const Mat4& a, const Mat4& b);

/// Recover interface/point primitives from a conserved 4-vector
/// (rho, rho*u, rho*E, sxx). Throws NonPhysicalState via the EOS guards.
PrimitiveState primitive_from_conserved(const ConservedCell& q,
                                        const MaterialModel& mat);
ConservedCell conserved_from_primitive(const PrimitiveState& q);

/// Flux Jacobian of the quasi-linear system in Q = (rho, rho*u, rho*E, sxx),
/// assembled entry by entry with dp/drho from the EOS closed form and the
/// Cauchy stress sigma_x = -p + sxx. Eigenvalues are (u-c, u, u, u+c) with c
/// the elastic sound speed.
Mat4 flux_jacobian(const PrimitiveState& q, const MaterialModel& mat);

/// Left/right eigenvector pair of the flux Jacobian, columns of R (rows of L)
/// ordered as (u-c, u, u, u+c). Both matrices are closed forms obtained from
/// the primitive-variable eigenvectors and the dQ/dV transform, so L*R = I
/// holds to round-off by construction.
struct CharacteristicBasis {
  Mat4 L;
  Mat4 R;
  Vec4 eigenvalues;
};

CharacteristicBasis characteristic_basis(const PrimitiveState& q,
                                         const MaterialModel& mat);

/// Third-order WENO face values of the middle cell from three neighboring
/// cell averages and widths. Linear candidate polynomials, their optimal
/// weights, and the Jiang-Shu smoothness indicators all use the exact
/// nonuniform cell geometry; epsilon in the nonlinear weights is 1e-6.
/// Returns (left-face value, right-face value).
std::pair<double, double> weno3_point_values(const std::array<double, 3>& avgs,
                                             const std::array<double, 3>& widths);

/// Geometric part of the WENO reconstruction, shared by all components of a
/// cell. Candidate face values are v = c0*q_lo + c1*q_hi per stencil.
struct Weno3Geometry {
  double c0R[2], c1R[2]; // right-face candidate coefficients, stencils 0/1
  double c0L[2], c1L[2]; // left-face candidate coefficients
  double dR[2], dL[2];   // optimal (linear) weights per face
  double bfac[2];        // width factors entering the smoothness indicators

  static Weno3Geometry from_widths(double hm, double h0, double hp);
  std::pair<double, double> faces(double qm, double q0, double qp) const;
};

/// One interface's reconstructed limits: Q- from the left cell's stencil and
/// basis, Q+ from the right cell's.
struct InterfaceStates {
  PrimitiveState minus;
  PrimitiveState plus;
};

struct ReconEvents {
  long positivity_fallbacks = 0;    // face values replaced by cell averages
  long componentwise_fallbacks = 0; // cells reconstructed without a basis
};

/// Reconstruct (Q-, Q+) at every interface j = 0..N of an N-cell mesh from
/// the ghost-extended average array (two ghost cells per side, so
/// cells_ext.size() == N+4) and matching widths. Each cell projects its own
/// three-cell stencil with its own L, reconstructs componentwise, and maps
/// back with its own R. Interface values that come out EOS-invalid fall back
/// to the owning cell's average.
std::vector<InterfaceStates> reconstruct_interfaces(
    std::span<const ConservedCell> cells_ext, std::span<const double> widths_ext,
    const MaterialModel& mat, ReconEvents& events);

} // namespace epflow

#endif
