#pragma once

// Stability classification and transition loci along the family of sleeping
// equilibria: the fast-slow threshold, the fast-superfast point under the
// classical eta = lambda/2 velocity choice, the hyperbola E^2 = F of
// double-zero crossings, eigenvalue-path sweeps over lambda and
// (lambda, eta)-plane chart datasets.

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sleeptop/spectrum.hpp"

namespace sleeptop {

enum class Stability { unstable, stable, critical };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::unstable: return "unstable";
    case Stability::stable: return "stable";
    case Stability::critical: return "critical";
  }
  return "unknown";
}

struct StabilityVerdict {
  Stability verdict = Stability::unstable;
  std::optional<double> witness_eta;  // an eta with A*C - B^2 > 0, when stable
};

struct TransitionPoints {
  double tau_fast_slow = 0;
  std::optional<double> tau_fast_superfast_lewis;  // absent for prolate bodies
};

/// eta* = (I3 - I1) * lambda / (2*I1), the maximiser of A*C - B^2 over eta
/// (equivalently the velocity choice with E = 0).
inline double optimal_eta(const TopParameters& p, double lambda) {
  return (p.I3 - p.I1) * lambda / (2 * p.I1);
}

/// Strict definiteness test A*C - B^2 > 0; boundary cases surface through
/// stability_classify's critical verdict instead of a tolerance here.
inline bool definiteness_test(const TopParameters& p, double lambda, double eta) {
  const HessianCoefficients c = hessian_coefficients(p, lambda, eta);
  return c.A * c.C - c.B * c.B > 0.0;
}

/// The classical fast-top threshold 2*sqrt(m*g*l*I1) / I3.
inline double fast_slow_threshold(const TopParameters& p) {
  return 2 * std::sqrt(p.m * p.g * p.l * p.I1) / p.I3;
}

/// The fast-superfast spin under the eta = lambda/2 choice,
/// sqrt(m*g*l / (I3 - I1)); present only for oblate bodies (I3 > I1).
inline std::optional<double> fast_superfast_lewis(const TopParameters& p) {
  if (!(p.I3 > p.I1)) return std::nullopt;
  return std::sqrt(p.m * p.g * p.l / (p.I3 - p.I1));
}

inline TransitionPoints transition_points(const TopParameters& p) {
  return {fast_slow_threshold(p), fast_superfast_lewis(p)};
}

inline StabilityVerdict stability_classify(const TopParameters& p, double lambda) {
  const double tau = fast_slow_threshold(p);
  const double spin = std::fabs(lambda);
  if (std::fabs(spin - tau) <= 1e-12 * std::max(1.0, tau)) {
    return {Stability::critical, std::nullopt};
  }
  if (spin > tau) return {Stability::stable, optimal_eta(p, lambda)};
  return {Stability::unstable, std::nullopt};
}

/// Real eta roots of the double-zero hyperbola at the given lambda:
/// ((I3 - I1)*lambda +- sqrt(F)) / (2*I1). Two roots iff F > 0, one iff
/// F = 0, none iff F < 0; larger root first.
inline std::vector<double> hyperbola_eta(const TopParameters& p, double lambda) {
  const double f = transition_invariants(p, lambda, 0).F;
  const double center = (p.I3 - p.I1) * lambda / (2 * p.I1);
  if (f < 0) return {};
  if (f == 0) return {center};
  const double half_width = std::sqrt(f) / (2 * p.I1);
  return {center + half_width, center - half_width};
}

/// A rule assigning the isotropy coordinate eta to each lambda of a sweep.
/// zero_e coincides with star: E = 0 exactly when eta = eta*.
struct EtaRule {
  enum class Kind { lewis, star, zero_e, linear, constant };

  Kind kind = Kind::lewis;
  double slope = 0;
  double offset = 0;

  double eta(const TopParameters& p, double lambda) const {
    switch (kind) {
      case Kind::lewis: return 0.5 * lambda;
      case Kind::star:
      case Kind::zero_e: return optimal_eta(p, lambda);
      case Kind::linear: return slope * lambda + offset;
      case Kind::constant: return offset;
    }
    return 0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::lewis: return "lewis";
      case Kind::star: return "star";
      case Kind::zero_e: return "zero-e";
      case Kind::linear: return "linear:" + std::to_string(slope) + "," + std::to_string(offset);
      case Kind::constant: return "const:" + std::to_string(offset);
    }
    return "unknown";
  }

  static EtaRule lewis() { return {}; }
  static EtaRule star() { return {Kind::star, 0, 0}; }
  static EtaRule zero_e() { return {Kind::zero_e, 0, 0}; }
  static EtaRule linear(double a, double b) { return {Kind::linear, a, b}; }
  static EtaRule constant(double c) { return {Kind::constant, 0, c}; }

  /// Parses "lewis", "star", "zero-e", "linear:a,b" or "const:c".
  static EtaRule parse(const std::string& text) {
    if (text == "lewis") return lewis();
    if (text == "star") return star();
    if (text == "zero-e") return zero_e();
    auto payload = [&](const std::string& prefix) -> std::optional<std::string> {
      if (text.rfind(prefix, 0) == 0) return text.substr(prefix.size());
      return std::nullopt;
    };
    try {
      if (auto body = payload("linear:")) {
        const auto comma = body->find(',');
        if (comma == std::string::npos) throw invalid_parameters("");
        std::size_t used_a = 0, used_b = 0;
        const std::string a_text = body->substr(0, comma), b_text = body->substr(comma + 1);
        const double a = std::stod(a_text, &used_a);
        const double b = std::stod(b_text, &used_b);
        if (used_a != a_text.size() || used_b != b_text.size()) throw invalid_parameters("");
        return linear(a, b);
      }
      if (auto body = payload("const:")) {
        std::size_t used = 0;
        const double c = std::stod(*body, &used);
        if (used != body->size()) throw invalid_parameters("");
        return constant(c);
      }
    } catch (const std::exception&) {
      // fall through to the common error below
    }
    throw invalid_parameters("invalid eta rule '" + text +
                             "' (expected lewis|star|zero-e|linear:a,b|const:c)");
  }
};

struct SweepRecord {
  double lambda = 0;
  double eta = 0;
  double E = 0;
  double F = 0;
  Spectrum eigenvalues;
  SpectrumClass cls = SpectrumClass::imaginary_distinct;
};

enum class TransitionKind {
  hamiltonian_hopf,  // sign flip of F: imaginary pairs collide and leave the axis
  double_zero,       // sign flip of E^2 - F: an imaginary pair crosses zero
  pair_collision     // sign flip of E: the two imaginary pairs become double
};

inline const char* to_string(TransitionKind k) {
  switch (k) {
    case TransitionKind::hamiltonian_hopf: return "hamiltonian_hopf";
    case TransitionKind::double_zero: return "double_zero";
    case TransitionKind::pair_collision: return "pair_collision";
  }
  return "unknown";
}

struct TransitionEvent {
  double lambda = 0;
  TransitionKind kind = TransitionKind::hamiltonian_hopf;
  SpectrumClass before = SpectrumClass::imaginary_distinct;  // at the grid node left of the event
  SpectrumClass at = SpectrumClass::imaginary_distinct;      // at the refined lambda
  SpectrumClass after = SpectrumClass::imaginary_distinct;   // at the grid node right of the event
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<TransitionEvent> transitions;
};

namespace detail {

inline SweepRecord evaluate_sweep_node(const TopParameters& p, double lambda, double eta,
                                       double tol) {
  const SpectrumReport report = spectrum_report(p, lambda, eta, tol);
  // Every shipped record is cross-checked against the independent numeric
  // eigensolve; a mismatch aborts the sweep rather than emitting bad data.
  // The guard sits at 1e-7: a node landing exactly on an eigenvalue
  // collision amplifies coefficient roundoff by a square root (~1e-8),
  // while a genuine formula regression shows up at the eigenvalue scale.
  const Spectrum numeric = eigenvalues_numeric(linearization(p, lambda, eta));
  double magnitude = 1.0;
  for (const auto& v : report.eigenvalues) magnitude = std::max(magnitude, std::abs(v));
  const double distance = eigenvalue_match_distance(report.eigenvalues, numeric);
  if (!(distance <= 1e-7 * magnitude)) {
    char text[128];
    std::snprintf(text, sizeof text,
                  "eigenvalue cross-check failed at lambda=%.17g (multiset distance %.3g)",
                  lambda, distance);
    throw error(text);
  }
  return {lambda, eta, report.invariants.E, report.invariants.F, report.eigenvalues, report.cls};
}

inline int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/// Bisection on the sign of a scalar indicator, refined to width 1e-10.
inline double bisect_sign_change(const std::function<double(double)>& f, double a, double b) {
  int sa = sign_of(f(a));
  for (int iter = 0; iter < 200 && (b - a) > 1e-10; ++iter) {
    const double mid = 0.5 * (a + b);
    const int sm = sign_of(f(mid));
    if (sm == 0) return mid;
    if (sm == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Uniform lambda sweep with eta supplied by the rule. Transitions are the
/// sign changes of the indicators F, E and E^2 - F along the sampled path,
/// refined by bisection on the discrete sign to 1e-10; each event records
/// the class at the bracketing nodes and at the refined point. Sign changes
/// of E^2 - F are what a class-only grid scan cannot see: the double-zero
/// class exists at a single lambda between two nodes of equal class.
/// E is the one indicator a rule can pin to zero identically (star/zero-e),
/// so values of E inside the classification dead zone count as zero and
/// produce no events from rounding noise; F and E^2 - F cannot be pinned
/// and use raw signs, which keeps a threshold sitting exactly on a sweep
/// endpoint detectable.
inline SweepResult sweep_eigenvalue_paths(const TopParameters& p, const EtaRule& rule,
                                          double lambda_min, double lambda_max, int steps,
                                          double tol = 1e-9) {
  validate(p);
  if (steps < 2) throw invalid_parameters("sweep requires at least 2 steps");
  if (!(lambda_min < lambda_max)) throw invalid_parameters("sweep requires lambda_min < lambda_max");

  SweepResult result;
  result.records.reserve(static_cast<std::size_t>(steps));
  const double span = lambda_max - lambda_min;
  for (int k = 0; k < steps; ++k) {
    const double lambda = lambda_min + span * k / (steps - 1);
    result.records.push_back(detail::evaluate_sweep_node(p, lambda, rule.eta(p, lambda), tol));
  }

  struct Indicator {
    TransitionKind kind;
    std::function<double(double)> value;
    std::function<double(double)> dead_zone;
  };
  auto invariants_at = [&](double lambda) {
    return transition_invariants(p, lambda, rule.eta(p, lambda));
  };
  const Indicator indicators[3] = {
      {TransitionKind::hamiltonian_hopf, [&](double l) { return invariants_at(l).F; },
       [](double) { return 0.0; }},
      {TransitionKind::pair_collision, [&](double l) { return invariants_at(l).E; },
       [&](double l) { return tol * std::sqrt(classification_scale(p, l)); }},
      {TransitionKind::double_zero,
       [&](double l) {
         const auto [e, f] = invariants_at(l);
         return e * e - f;
       },
       [](double) { return 0.0; }}};

  auto classify_at = [&](double lambda) {
    return classify_spectrum(p, lambda, rule.eta(p, lambda), tol);
  };
  for (const auto& ind : indicators) {
    int last_sign = 0;
    int last_node = 0;
    for (int k = 0; k < steps; ++k) {
      const double lambda = result.records[k].lambda;
      const double value = ind.value(lambda);
      const int sign =
          std::fabs(value) <= ind.dead_zone(lambda) ? 0 : detail::sign_of(value);
      if (sign == 0) continue;
      if (last_sign != 0 && sign != last_sign) {
        const double where =
            detail::bisect_sign_change(ind.value, result.records[last_node].lambda, lambda);
        result.transitions.push_back({where, ind.kind, result.records[last_node].cls,
                                      classify_at(where), result.records[k].cls});
      }
      last_sign = sign;
      last_node = k;
    }
  }
  // stable: coincident events (e.g. both transitions on the E = 0 line)
  // keep the fixed indicator order
  std::stable_sort(result.transitions.begin(), result.transitions.end(),
                   [](const TransitionEvent& x, const TransitionEvent& y) {
                     return x.lambda < y.lambda;
                   });
  return result;
}

/// Inclusive uniform sampling of [min, max] with count nodes.
struct SampleRange {
  double min = 0;
  double max = 1;
  int count = 2;

  double at(int k) const { return min + (max - min) * k / (count - 1); }
};

inline void validate(const SampleRange& r, const char* what) {
  if (r.count < 2 || !(r.min < r.max)) {
    throw invalid_parameters(std::string(what) + " range requires min < max and count >= 2");
  }
}

struct ChartNode {
  double lambda = 0;
  double eta = 0;
  double E = 0;
  double F = 0;
  int discriminant_sign = 0;  // sign of E^2 - F
  SpectrumClass cls = SpectrumClass::imaginary_distinct;
};

struct ChartPoint {
  double lambda = 0;
  double eta = 0;
};

/// Grid of invariants/classes over a (lambda, eta) window plus the labelled
/// curves of the chart: both hyperbola branches (sampled parametrically in
/// lambda wherever F >= 0), the line L1 (eta = lambda/2) and the line L2
/// (eta = eta*, i.e. E = 0).
struct ChartResult {
  std::vector<ChartNode> grid;
  std::vector<ChartPoint> hyperbola_upper;
  std::vector<ChartPoint> hyperbola_lower;
  std::vector<ChartPoint> line_lewis;
  std::vector<ChartPoint> line_zero_e;
};

inline ChartResult plane_chart(const TopParameters& p, const SampleRange& lambda_range,
                               const SampleRange& eta_range, double tol = 1e-9) {
  validate(p);
  validate(lambda_range, "lambda");
  validate(eta_range, "eta");

  ChartResult result;
  result.grid.reserve(static_cast<std::size_t>(lambda_range.count) * eta_range.count);
  for (int i = 0; i < lambda_range.count; ++i) {
    const double lambda = lambda_range.at(i);
    for (int j = 0; j < eta_range.count; ++j) {
      const double eta = eta_range.at(j);
      const auto [e, f] = transition_invariants(p, lambda, eta);
      result.grid.push_back({lambda, eta, e, f, detail::sign_of(e * e - f),
                             classify_spectrum(p, lambda, eta, tol)});
    }
  }
  for (int i = 0; i < lambda_range.count; ++i) {
    const double lambda = lambda_range.at(i);
    const auto roots = hyperbola_eta(p, lambda);
    if (!roots.empty()) {
      result.hyperbola_upper.push_back({lambda, roots.front()});
      result.hyperbola_lower.push_back({lambda, roots.back()});
    }
    result.line_lewis.push_back({lambda, 0.5 * lambda});
    result.line_zero_e.push_back({lambda, optimal_eta(p, lambda)});
  }
  return result;
}

}  // namespace sleeptop
