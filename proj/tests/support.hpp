#pragma once

// Shared helpers for the unit and acceptance suites: the two reference
// parameter sets, a reproducible uniform generator (the raw engine output is
// mapped to doubles by hand so streams do not depend on the standard
// library's distribution internals), and small independent oracles.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "sleeptop/sleeptop.hpp"

namespace testsupport {

inline sleeptop::TopParameters oblate() { return {1, 1, 1, 1, 1.5}; }
inline sleeptop::TopParameters prolate() { return {1, 1, 1, 1, 0.8}; }

struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    const double u = std::ldexp(static_cast<double>(gen() >> 11), -53);
    return lo + (hi - lo) * u;
  }

  sleeptop::Vec3 vec(double radius) {
    return {uniform(-radius, radius), uniform(-radius, radius), uniform(-radius, radius)};
  }

  sleeptop::Mat3 rotation() { return sleeptop::exp_so3(vec(1.8)); }

  sleeptop::PhasePoint phase_point() { return {rotation(), vec(3.0)}; }

  sleeptop::TangentVector tangent() { return {vec(1.0), vec(1.0)}; }
};

/// Truncated power series for the matrix exponential, independent of the
/// Rodrigues route.
inline sleeptop::Mat3 exp_series(const sleeptop::Mat3& m, int terms = 24) {
  sleeptop::Mat3 sum = sleeptop::Mat3::identity();
  sleeptop::Mat3 power = sleeptop::Mat3::identity();
  for (int k = 1; k <= terms; ++k) {
    power = (1.0 / k) * (power * m);
    sum = sum + power;
  }
  return sum;
}

/// Eigenvalues of a symmetric 4x4 matrix by cyclic Jacobi sweeps,
/// ascending. Used as an oracle against the closed-form sigma+-.
inline std::array<double, 4> symmetric_eigenvalues(const sleeptop::Mat4& input) {
  sleeptop::Mat4 m = input;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off = std::max(off, std::fabs(m(i, j)));
    if (off < 1e-14) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (std::fabs(m(p, q)) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2 * m(p, q), m(q, q) - m(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        sleeptop::Mat4 rot = sleeptop::Mat4::identity();
        rot(p, p) = c;
        rot(q, q) = c;
        rot(p, q) = s;
        rot(q, p) = -s;
        m = transpose(rot) * m * rot;
      }
    }
  }
  std::array<double, 4> ev{m(0, 0), m(1, 1), m(2, 2), m(3, 3)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace testsupport
