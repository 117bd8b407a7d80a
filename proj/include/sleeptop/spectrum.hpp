#pragma once

// Linearised dynamics on the symplectic slice: the one-parameter family of
// linearisations L(lambda, eta), its biquadratic characteristic polynomial,
// closed-form and numeric eigenvalues, and the spectrum classification.
//
// The two invariants that organise everything are
//   E = I3*lambda - I1*(2*eta + lambda),   F = I3^2*lambda^2 - 4*m*g*l*I1;
// the eigenvalues of L are (i / (2*I1)) * (+-E +- sqrt(F)).

#include <algorithm>
#include <array>
#include <complex>
#include <string>

#include "sleeptop/mat4.hpp"
#include "sleeptop/slice.hpp"
#include "sleeptop/top.hpp"

namespace sleeptop {

struct TransitionInvariants {
  double E = 0;
  double F = 0;
};

enum class SpectrumClass {
  real_double_pair,             // E ~ 0, F < 0: two real pairs (unstable)
  complex_quadruple,            // E != 0, F < 0: quadruple off both axes
  imaginary_distinct,           // F > 0, E^2 != F: four distinct imaginary
  imaginary_double_pairs,       // F > 0, E ~ 0 (or the F ~ 0 collision)
  imaginary_pair_double_zero,   // F > 0, E^2 = F: the double-zero crossing
  quadruple_zero                // E ~ 0 and F ~ 0
};

inline const char* to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::real_double_pair: return "real_double_pair";
    case SpectrumClass::complex_quadruple: return "complex_quadruple";
    case SpectrumClass::imaginary_distinct: return "imaginary_distinct";
    case SpectrumClass::imaginary_double_pairs: return "imaginary_double_pairs";
    case SpectrumClass::imaginary_pair_double_zero: return "imaginary_pair_double_zero";
    case SpectrumClass::quadruple_zero: return "quadruple_zero";
  }
  return "unknown";
}

using Spectrum = std::array<std::complex<double>, 4>;

struct SpectrumReport {
  Spectrum eigenvalues;          // sorted: imaginary part descending, then real descending
  TransitionInvariants invariants;
  SpectrumClass cls = SpectrumClass::imaginary_distinct;
  bool boundary = false;         // |F| within tolerance of zero (pair collision)
};

inline TransitionInvariants transition_invariants(const TopParameters& p, double lambda,
                                                  double eta) {
  return {p.I3 * lambda - p.I1 * (2 * eta + lambda),
          p.I3 * p.I3 * lambda * lambda - 4 * p.m * p.g * p.l * p.I1};
}

/// Reference magnitude for classification tolerances; E and F carry units
/// of action, so absolute thresholds would be meaningless across ranges.
inline double classification_scale(const TopParameters& p, double lambda) {
  return p.I3 * p.I3 * lambda * lambda + 4 * p.m * p.g * p.l * p.I1;
}

/// Matrix of the linearised system on the slice; equals
/// slice_symplectic_inverse * slice_hessian.
inline Mat4 linearization(const TopParameters& p, double lambda, double eta) {
  const HessianCoefficients c = hessian_coefficients(p, lambda, eta);
  const double a = lambda * p.I3;
  const double d = c.A - a * c.B;
  const double g = c.B - a * c.C;
  return Mat4{{0, c.B, -c.C, 0,
               -c.B, 0, 0, -c.C,
               d, 0, 0, g,
               0, d, -g, 0}};
}

/// Coefficients (p2, p0) of the characteristic polynomial t^4 + p2 t^2 + p0,
/// in the (E, F) form; the (A, B, C) form agrees and is checked in tests.
struct CharPoly {
  double p2 = 0;
  double p0 = 0;
};

inline CharPoly characteristic_polynomial(const TopParameters& p, double lambda, double eta) {
  const auto [E, F] = transition_invariants(p, lambda, eta);
  const double i12 = p.I1 * p.I1;
  const double q = (E * E - F) / (4 * i12);
  return {(E * E + F) / (2 * i12), q * q};
}

namespace detail {

inline void sort_spectrum(Spectrum& s) {
  std::sort(s.begin(), s.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.imag() != b.imag()) return a.imag() > b.imag();
    return a.real() > b.real();
  });
}

}  // namespace detail

/// The four eigenvalues (i / (2*I1)) * (+-E +- sqrt(F)); for F < 0 the square
/// root is imaginary and the quadruple leaves the imaginary axis.
inline Spectrum eigenvalues_closed_form(const TopParameters& p, double lambda, double eta) {
  const auto [E, F] = transition_invariants(p, lambda, eta);
  const std::complex<double> root_f =
      F >= 0 ? std::complex<double>(std::sqrt(F), 0) : std::complex<double>(0, std::sqrt(-F));
  const std::complex<double> i_over(0, 0.5 / p.I1);
  Spectrum s{i_over * (E + root_f), i_over * (E - root_f), i_over * (-E + root_f),
             i_over * (-E - root_f)};
  detail::sort_spectrum(s);
  return s;
}

/// Roots of det(L - t*Id) computed without the E/F shortcut: the coefficients
/// come from a trace/minor expansion of the given matrix and the biquadratic
/// is solved directly. The whole computation runs in extended precision, so
/// the discriminant p2^2 - 4*p0 (the one cancellation-prone quantity) is
/// always formed with ~64-bit mantissas rather than behind a fallback guard.
inline Spectrum eigenvalues_numeric(const Mat4& l) {
  // p2 = sum of principal 2x2 minors, p0 = det; odd coefficients vanish for
  // Hamiltonian matrices and are not used.
  long double p2 = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      p2 += static_cast<long double>(l(i, i)) * l(j, j) -
            static_cast<long double>(l(i, j)) * l(j, i);
  long double w[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i][j] = l(i, j);
  long double p0 = 1.0L;
  for (int k = 0; k < 4; ++k) {
    int piv = k;
    for (int i = k + 1; i < 4; ++i)
      if (fabsl(w[i][k]) > fabsl(w[piv][k])) piv = i;
    if (w[piv][k] == 0.0L) {
      p0 = 0.0L;
      break;
    }
    if (piv != k) {
      for (int j = 0; j < 4; ++j) std::swap(w[piv][j], w[k][j]);
      p0 = -p0;
    }
    p0 *= w[k][k];
    for (int i = k + 1; i < 4; ++i) {
      const long double f = w[i][k] / w[k][k];
      for (int j = k; j < 4; ++j) w[i][j] -= f * w[k][j];
    }
  }

  const long double disc = p2 * p2 - 4.0L * p0;
  std::complex<long double> u1, u2;
  if (disc >= 0) {
    const long double sd = sqrtl(disc);
    // stable quadratic: avoid subtracting nearly equal quantities
    const long double q = -0.5L * (p2 + copysignl(sd, p2));
    u1 = q;
    u2 = (q != 0.0L) ? p0 / q : 0.0L;
  } else {
    const long double im = 0.5L * sqrtl(-disc);
    u1 = {-0.5L * p2, im};
    u2 = {-0.5L * p2, -im};
  }
  const std::complex<long double> r1 = std::sqrt(u1);
  const std::complex<long double> r2 = std::sqrt(u2);
  Spectrum s{std::complex<double>(static_cast<double>(r1.real()), static_cast<double>(r1.imag())),
             std::complex<double>(static_cast<double>(-r1.real()), static_cast<double>(-r1.imag())),
             std::complex<double>(static_cast<double>(r2.real()), static_cast<double>(r2.imag())),
             std::complex<double>(static_cast<double>(-r2.real()), static_cast<double>(-r2.imag()))};
  detail::sort_spectrum(s);
  return s;
}

/// Optimal matching distance between two spectra as multisets:
/// min over pairings of the largest pairwise distance.
inline double eigenvalue_match_distance(const Spectrum& a, const Spectrum& b) {
  std::array<int, 4> perm{0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Classifies the spectrum from the signs of F, E and E^2 - F, all measured
/// against tol * scale (tol * sqrt(scale) for E, which carries half the
/// units). A value of F within tolerance of zero is reported as the
/// stable-side limit, the collision of two imaginary pairs, and flagged
/// as a boundary in spectrum_report.
inline SpectrumClass classify_spectrum(const TopParameters& p, double lambda, double eta,
                                       double tol = 1e-9) {
  const auto [E, F] = transition_invariants(p, lambda, eta);
  const double scale = classification_scale(p, lambda);
  const double eps_f = tol * scale;
  const bool e_zero = std::fabs(E) <= tol * std::sqrt(scale);
  if (F < -eps_f) {
    return e_zero ? SpectrumClass::real_double_pair : SpectrumClass::complex_quadruple;
  }
  if (F <= eps_f) {
    return e_zero ? SpectrumClass::quadruple_zero : SpectrumClass::imaginary_double_pairs;
  }
  if (e_zero) return SpectrumClass::imaginary_double_pairs;
  if (std::fabs(E * E - F) <= tol * scale) return SpectrumClass::imaginary_pair_double_zero;
  return SpectrumClass::imaginary_distinct;
}

inline SpectrumReport spectrum_report(const TopParameters& p, double lambda, double eta,
                                      double tol = 1e-9) {
  SpectrumReport r;
  r.eigenvalues = eigenvalues_closed_form(p, lambda, eta);
  r.invariants = transition_invariants(p, lambda, eta);
  r.cls = classify_spectrum(p, lambda, eta, tol);
  r.boundary = std::fabs(r.invariants.F) <= tol * classification_scale(p, lambda);
  return r;
}

}  // namespace sleeptop
