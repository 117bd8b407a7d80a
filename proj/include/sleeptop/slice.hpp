#pragma once

// The symplectic slice at a sleeping equilibrium: the fixed basis
//   u1 = (e1, 0), u2 = (e2, 0), u3 = (0, e1), u4 = (0, e2)
// of N = {(dtheta, dpi) : dtheta, dpi perpendicular to e3}, the slice
// symplectic matrix, the restricted Hessian of the augmented Hamiltonian
// with its A, B, C coefficients, and the residual circle action on N.
// Slice coordinates are always expressed in this basis; no
// orthonormalisation is applied.

#include <array>
#include <cmath>

#include "sleeptop/mat4.hpp"
#include "sleeptop/top.hpp"

namespace sleeptop {

/// Coefficients of the restricted Hessian:
///   A = -m*g*l + (lambda^2*I3 / (2*I1)) * (2*I3 - I1) - lambda*I3*eta
///   B = (lambda / (2*I1)) * (2*I3 - I1) - eta
///   C = 1 / I1
struct HessianCoefficients {
  double A = 0;
  double B = 0;
  double C = 0;
};

inline std::array<TangentVector, 4> slice_basis() {
  return {TangentVector{e1, {0, 0, 0}}, TangentVector{e2, {0, 0, 0}},
          TangentVector{{0, 0, 0}, e1}, TangentVector{{0, 0, 0}, e2}};
}

/// Embeds slice coordinates into a right-trivialised tangent vector.
inline TangentVector embed_slice_vector(const Vec4& w) {
  return {{w[0], w[1], 0}, {w[2], w[3], 0}};
}

/// Matrix of the slice symplectic form in the fixed basis.
inline Mat4 slice_symplectic(const TopParameters& p, double lambda) {
  const double a = lambda * p.I3;
  return Mat4{{0, -a, 1, 0,
               a, 0, 0, 1,
               -1, 0, 0, 0,
               0, -1, 0, 0}};
}

inline Mat4 slice_symplectic_inverse(const TopParameters& p, double lambda) {
  const double a = lambda * p.I3;
  return Mat4{{0, 0, -1, 0,
               0, 0, 0, -1,
               1, 0, 0, -a,
               0, 1, a, 0}};
}

/// Value of the slice symplectic form on coordinate vectors: w1^T Omega w2.
inline double slice_form_value(const TopParameters& p, double lambda, const Vec4& w1,
                               const Vec4& w2) {
  return dot(w1, slice_symplectic(p, lambda) * w2);
}

inline HessianCoefficients hessian_coefficients(const TopParameters& p, double lambda,
                                                double eta) {
  const double mgl = p.m * p.g * p.l;
  const double A =
      -mgl + (lambda * lambda * p.I3 / (2 * p.I1)) * (2 * p.I3 - p.I1) - lambda * p.I3 * eta;
  const double B = (lambda / (2 * p.I1)) * (2 * p.I3 - p.I1) - eta;
  const double C = 1.0 / p.I1;
  return {A, B, C};
}

/// Restricted Hessian of the augmented Hamiltonian in the slice basis.
inline Mat4 slice_hessian(const HessianCoefficients& c) {
  return Mat4{{c.A, 0, 0, c.B,
               0, c.A, -c.B, 0,
               0, -c.B, c.C, 0,
               c.B, 0, 0, c.C}};
}

/// Residual circle action on slice coordinates: the block rotation
/// diag(Rot(phi), Rot(phi)) acting on the (e1, e2) components of both legs.
inline Mat4 slice_s1_matrix(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return Mat4{{c, -s, 0, 0,
               s, c, 0, 0,
               0, 0, c, -s,
               0, 0, s, c}};
}

inline Vec4 slice_s1_action(double phi, const Vec4& w) { return slice_s1_matrix(phi) * w; }

namespace detail {

// Extended-precision kernel for the finite-difference oracle. Second
// differences at step 1e-5 lose ~1e-5 relative accuracy in double, which
// would not meet the 1e-6 entrywise target; in long double the roundoff
// floor drops below the O(eps^2) truncation error.

struct LVec3 {
  long double x = 0, y = 0, z = 0;
};

struct LMat3 {
  long double a[9] = {};
  long double operator()(int r, int c) const { return a[3 * r + c]; }
};

inline LVec3 ladd(const LVec3& u, const LVec3& v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
inline LVec3 lscale(long double s, const LVec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline long double ldot(const LVec3& u, const LVec3& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline LMat3 lmul(const LMat3& m, const LMat3& n) {
  LMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long double s = 0;
      for (int k = 0; k < 3; ++k) s += m(i, k) * n(k, j);
      r.a[3 * i + j] = s;
    }
  return r;
}

inline LVec3 lapply(const LMat3& m, const LVec3& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

inline LMat3 lexp_so3(const LVec3& v) {
  const LMat3 id{{1, 0, 0, 0, 1, 0, 0, 0, 1}};
  const LMat3 xh{{0, -v.z, v.y, v.z, 0, -v.x, -v.y, v.x, 0}};
  const long double t2 = ldot(v, v);
  LMat3 xh2 = lmul(xh, xh);
  long double k1, k2;
  if (t2 < 1e-24L) {
    k1 = 1.0L - t2 / 6.0L;
    k2 = 0.5L - t2 / 24.0L;
  } else {
    const long double t = sqrtl(t2);
    k1 = sinl(t) / t;
    const long double sh = sinl(0.5L * t);
    k2 = 2.0L * sh * sh / t2;
  }
  LMat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = id.a[i] + k1 * xh.a[i] + k2 * xh2.a[i];
  return r;
}

inline long double laugmented(const TopParameters& p, const LMat3& attitude, const LVec3& pi,
                              long double xi_left, long double xi_right) {
  const LVec3 ez{0, 0, 1};
  const LVec3 axis = lapply(attitude, ez);
  // body-frame momentum, then I^-1 in the body frame
  LMat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.a[3 * i + j] = attitude(j, i);
  const LVec3 body = lapply(t, pi);
  const LVec3 scaled{body.x / p.I1, body.y / p.I1, body.z / p.I3};
  const long double kinetic = 0.5L * ldot(body, scaled);
  const long double mgl = static_cast<long double>(p.m) * p.g * p.l;
  return mgl * axis.z + kinetic - pi.z * xi_left + ldot(pi, axis) * xi_right;
}

// Augmented Hamiltonian along the two-parameter surface
//   (exp(s*dtheta_i) * exp(t*dtheta_j), lambda*I3*e3 + s*dpi_i + t*dpi_j).
inline long double fd_corner(const TopParameters& p, double lambda, double eta, int i, int j,
                             long double s, long double t) {
  static const LVec3 dtheta[4] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 0}};
  static const LVec3 dpi[4] = {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const LMat3 attitude = lmul(lexp_so3(lscale(s, dtheta[i])), lexp_so3(lscale(t, dtheta[j])));
  const LVec3 pi = ladd(LVec3{0, 0, static_cast<long double>(lambda) * p.I3},
                        ladd(lscale(s, dpi[i]), lscale(t, dpi[j])));
  const long double xi_left = static_cast<long double>(eta) + 0.5L * lambda;
  const long double xi_right = static_cast<long double>(eta) - 0.5L * lambda;
  return laugmented(p, attitude, pi, xi_left, xi_right);
}

}  // namespace detail

/// Central finite-difference Hessian of the augmented Hamiltonian on the
/// slice, the independent oracle for slice_hessian. The velocity is the
/// admissible one for the given lambda (so the sleeping point is critical
/// and the second differences are curve-independent). Default step 1e-5.
inline Mat4 finite_difference_hessian(const TopParameters& p, double lambda, double eta,
                                      double step = 1e-5) {
  const long double eps = step;
  Mat4 h;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      long double value;
      if (i == j) {
        const long double fp = detail::fd_corner(p, lambda, eta, i, i, eps, 0);
        const long double f0 = detail::fd_corner(p, lambda, eta, i, i, 0, 0);
        const long double fm = detail::fd_corner(p, lambda, eta, i, i, -eps, 0);
        value = (fp - 2 * f0 + fm) / (eps * eps);
      } else {
        const long double fpp = detail::fd_corner(p, lambda, eta, i, j, eps, eps);
        const long double fpm = detail::fd_corner(p, lambda, eta, i, j, eps, -eps);
        const long double fmp = detail::fd_corner(p, lambda, eta, i, j, -eps, eps);
        const long double fmm = detail::fd_corner(p, lambda, eta, i, j, -eps, -eps);
        value = (fpp - fpm - fmp + fmm) / (4 * eps * eps);
      }
      h(i, j) = static_cast<double>(value);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

}  // namespace sleeptop
