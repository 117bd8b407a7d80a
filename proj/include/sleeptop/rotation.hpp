#pragma once

// Minimal SO(3)/so(3) kit: 3-vectors, dense 3x3 matrices, the hat/vee
// isomorphism and the Rodrigues exponential. Matrices are row-major
// throughout the library: entry (r, c) lives at index 3*r + c.

#include <array>
#include <cmath>
#include <string>

#include "sleeptop/errors.hpp"

namespace sleeptop {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline constexpr Vec3 e1{1, 0, 0};
inline constexpr Vec3 e2{0, 1, 0};
inline constexpr Vec3 e3{0, 0, 1};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double max_abs(const Vec3& a) {
  return std::max({std::fabs(a.x), std::fabs(a.y), std::fabs(a.z)});
}

inline bool all_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int r, int c) { return a[3 * r + c]; }
  double operator()(int r, int c) const { return a[3 * r + c]; }

  static constexpr Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
};

inline Mat3 operator+(const Mat3& m, const Mat3& n) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = m.a[i] + n.a[i];
  return r;
}

inline Mat3 operator-(const Mat3& m, const Mat3& n) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = m.a[i] - n.a[i];
  return r;
}

inline Mat3 operator*(double s, const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = s * m.a[i];
  return r;
}

inline Mat3 operator*(const Mat3& m, const Mat3& n) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += m(i, k) * n(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
  return r;
}

inline double det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Largest absolute entry.
inline double max_abs(const Mat3& m) {
  double r = 0;
  for (double v : m.a) r = std::max(r, std::fabs(v));
  return r;
}

inline double frobenius_norm(const Mat3& m) {
  double s = 0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

/// The hat isomorphism: hat(x) * y == cross(x, y).
constexpr Mat3 hat(const Vec3& x) {
  return Mat3{{0, -x.z, x.y, x.z, 0, -x.x, -x.y, x.x, 0}};
}

/// Inverse of hat. Throws not_antisymmetric when max_abs(M + M^T) > tol.
inline Vec3 vee(const Mat3& m, double tol = 1e-9) {
  const double defect = max_abs(m + transpose(m));
  if (defect > tol) {
    throw not_antisymmetric("vee: matrix is not antisymmetric (defect " +
                            std::to_string(defect) + " > tol " + std::to_string(tol) + ")");
  }
  return {0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1))};
}

/// Rodrigues formula; below ||x|| = 1e-8 the second-order series is used
/// so the sin(t)/t and (1-cos(t))/t^2 factors stay well conditioned.
inline Mat3 exp_so3(const Vec3& x) {
  const Mat3 xh = hat(x);
  const double t2 = dot(x, x);
  if (t2 < 1e-16) {
    return Mat3::identity() + xh + 0.5 * (xh * xh);
  }
  const double t = std::sqrt(t2);
  const double k1 = std::sin(t) / t;
  const double sh = std::sin(0.5 * t);
  const double k2 = 2.0 * sh * sh / t2;
  return Mat3::identity() + k1 * xh + k2 * (xh * xh);
}

/// True iff max_abs(M^T M - Id) <= tol and det(M) > 0.
inline bool is_rotation(const Mat3& m, double tol) {
  return max_abs(transpose(m) * m - Mat3::identity()) <= tol && det(m) > 0.0;
}

}  // namespace sleeptop
