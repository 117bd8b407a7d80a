#pragma once

// Dense 4x4 matrices and 4-vectors, row-major like Mat3. Everything on the
// symplectic slice (hessians, symplectic forms, linearisations) lives here.

#include <array>
#include <cmath>

namespace sleeptop {

using Vec4 = std::array<double, 4>;

struct Mat4 {
  std::array<double, 16> a{};

  double& operator()(int r, int c) { return a[4 * r + c]; }
  double operator()(int r, int c) const { return a[4 * r + c]; }

  static constexpr Mat4 identity() {
    return Mat4{{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}};
  }
};

inline Mat4 operator+(const Mat4& m, const Mat4& n) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = m.a[i] + n.a[i];
  return r;
}

inline Mat4 operator-(const Mat4& m, const Mat4& n) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = m.a[i] - n.a[i];
  return r;
}

inline Mat4 operator*(double s, const Mat4& m) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = s * m.a[i];
  return r;
}

inline Mat4 operator*(const Mat4& m, const Mat4& n) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += m(i, k) * n(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i) {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += m(i, k) * v[k];
    r[i] = s;
  }
  return r;
}

inline Mat4 transpose(const Mat4& m) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = m(j, i);
  return r;
}

/// Largest absolute entry.
inline double max_abs(const Mat4& m) {
  double r = 0;
  for (double v : m.a) r = std::max(r, std::fabs(v));
  return r;
}

inline double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Determinant via partial-pivot elimination in extended precision.
inline double det(const Mat4& m) {
  long double w[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i][j] = m(i, j);
  long double d = 1.0L;
  for (int k = 0; k < 4; ++k) {
    int piv = k;
    for (int i = k + 1; i < 4; ++i)
      if (fabsl(w[i][k]) > fabsl(w[piv][k])) piv = i;
    if (w[piv][k] == 0.0L) return 0.0;
    if (piv != k) {
      for (int j = 0; j < 4; ++j) std::swap(w[piv][j], w[k][j]);
      d = -d;
    }
    d *= w[k][k];
    for (int i = k + 1; i < 4; ++i) {
      const long double f = w[i][k] / w[k][k];
      for (int j = k; j < 4; ++j) w[i][j] -= f * w[k][j];
    }
  }
  return static_cast<double>(d);
}

}  // namespace sleeptop
