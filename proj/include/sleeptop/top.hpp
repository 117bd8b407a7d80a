#pragma once

// Right-trivialised phase-space model of the heavy symmetric top with a
// fixed point (the Lagrange top).
//
// Conventions used across the library:
//  * A phase point is (attitude, momentum) = (Lambda, pi) in SO(3) x R^3,
//    pi being the SPATIAL angular momentum.
//  * Tangent vectors are right-trivialised pairs (dtheta, dpi), i.e. the
//    attitude variation is d(Lambda) = hat(dtheta) * Lambda.
//  * The two circle symmetries are rotation about the vertical axis e3
//    (left factor) and spin about the body axis (right factor). A
//    relative-equilibrium velocity (xi_left, xi_right) is stored in the
//    coordinates (lambda, eta): lambda = xi_left - xi_right is the unique
//    spin rate transverse to the isotropy direction, eta parametrises the
//    residual freedom along the diagonal circle. lambda > 0 means
//    counterclockwise spin about +e3; the analysis is even or
//    systematically odd in lambda.

#include <cmath>
#include <string>

#include "sleeptop/errors.hpp"
#include "sleeptop/rotation.hpp"

namespace sleeptop {

/// Physical constants of the axisymmetric body: mass, gravity, distance
/// from the fixed point to the centre of mass, and the principal moments
/// of inertia about the fixed point (I1 transverse, I3 axial).
struct TopParameters {
  double m = 1;
  double g = 1;
  double l = 1;
  double I1 = 1;
  double I3 = 1.5;
};

/// Throws invalid_parameters naming the violated invariant. The moment
/// inequality I3 < 2*I1 is the axisymmetric form of Ii < Ij + Ik.
inline void validate(const TopParameters& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
      throw invalid_parameters(std::string("parameter invariant violated: ") + name + " > 0");
    }
  };
  positive(p.m, "m");
  positive(p.g, "g");
  positive(p.l, "l");
  positive(p.I1, "I1");
  positive(p.I3, "I3");
  if (!(p.I3 < 2 * p.I1)) {
    throw invalid_parameters("parameter invariant violated: I3 < 2*I1");
  }
}

struct PhasePoint {
  Mat3 attitude;   // Lambda in SO(3)
  Vec3 momentum;   // pi, spatial angular momentum
};

struct TangentVector {
  Vec3 dtheta;
  Vec3 dpi;
};

/// Generator pair (rotation about the vertical, spin about the body axis).
struct VelocityPair {
  double left = 0;
  double right = 0;
};

/// The (lambda, eta) coordinates of a relative-equilibrium velocity.
struct VelocityDecomposition {
  double lambda = 0;
  double eta = 0;
};

/// Values of the two conserved quantities.
struct MomentumValue {
  double j1 = 0;
  double j2 = 0;
};

/// Applies the inverse of the spatially-represented inertia tensor,
/// computed as Lambda * I^-1 * Lambda^T * v to avoid forming the tensor.
inline Vec3 inertia_inv_spatial(const TopParameters& p, const Mat3& attitude, const Vec3& v) {
  const Vec3 body = transpose(attitude) * v;
  const Vec3 scaled{body.x / p.I1, body.y / p.I1, body.z / p.I3};
  return attitude * scaled;
}

/// Total energy: m*g*l * e3.(Lambda e3) + pi.(I_Lambda^-1 pi) / 2.
inline double hamiltonian(const TopParameters& p, const PhasePoint& z) {
  const double potential = p.m * p.g * p.l * dot(e3, z.attitude * e3);
  const double kinetic = 0.5 * dot(z.momentum, inertia_inv_spatial(p, z.attitude, z.momentum));
  return potential + kinetic;
}

/// The two conserved quantities (pi.e3, -pi.(Lambda e3)).
inline MomentumValue momentum_map(const PhasePoint& z) {
  return {dot(z.momentum, e3), -dot(z.momentum, z.attitude * e3)};
}

/// Derivative of the momentum map in the direction v.
inline MomentumValue d_momentum_map(const PhasePoint& z, const TangentVector& v) {
  const Vec3 axis = z.attitude * e3;
  return {dot(v.dpi, e3), -dot(v.dpi, axis) - dot(z.momentum, cross(v.dtheta, axis))};
}

/// Symplectic form in right-trivialised coordinates:
/// dpi2.dtheta1 - dpi1.dtheta2 - pi.(dtheta1 x dtheta2).
inline double symplectic_form(const PhasePoint& z, const TangentVector& v1,
                              const TangentVector& v2) {
  return dot(v2.dpi, v1.dtheta) - dot(v1.dpi, v2.dtheta) -
         dot(z.momentum, cross(v1.dtheta, v2.dtheta));
}

/// h minus the momentum pairing with the velocity: its critical points are
/// the relative equilibria.
inline double augmented_hamiltonian(const TopParameters& p, const PhasePoint& z,
                                    const VelocityPair& xi) {
  return hamiltonian(p, z) - dot(z.momentum, e3) * xi.left +
         dot(z.momentum, z.attitude * e3) * xi.right;
}

/// First variation of the augmented Hamiltonian at an arbitrary phase point.
/// At (Id, lambda*I3*e3) this collapses to (lambda - (left - right)) * dpi.e3.
inline double d_augmented(const TopParameters& p, const PhasePoint& z, const VelocityPair& xi,
                          const TangentVector& v) {
  const Vec3 axis = z.attitude * e3;
  const Vec3 omega = inertia_inv_spatial(p, z.attitude, z.momentum);
  return p.m * p.g * p.l * dot(e3, cross(v.dtheta, axis)) + dot(v.dpi, omega) +
         dot(z.momentum, cross(v.dtheta, omega)) - xi.left * dot(v.dpi, e3) +
         xi.right * dot(v.dpi, axis) + xi.right * dot(z.momentum, cross(v.dtheta, axis));
}

/// Hamiltonian vector field X = (I_Lambda^-1 pi, m*g*l * e3 x (Lambda e3)).
/// Signs are pinned by two anchors exercised in the tests: the sleeping
/// orbit X = (lambda*e3, 0) and the identity omega(z)(X, v) = dh(z)v.
inline TangentVector hamiltonian_vector_field(const TopParameters& p, const PhasePoint& z) {
  return {inertia_inv_spatial(p, z.attitude, z.momentum),
          p.m * p.g * p.l * cross(e3, z.attitude * e3)};
}

/// The upright spinning equilibrium (Id, lambda*I3*e3).
inline PhasePoint sleeping_point(const TopParameters& p, double lambda) {
  return {Mat3::identity(), {0, 0, lambda * p.I3}};
}

inline VelocityDecomposition velocity_decompose(const VelocityPair& xi) {
  return {xi.left - xi.right, 0.5 * (xi.left + xi.right)};
}

inline VelocityPair velocity_compose(const VelocityDecomposition& d) {
  return {d.eta + 0.5 * d.lambda, d.eta - 0.5 * d.lambda};
}

}  // namespace sleeptop
