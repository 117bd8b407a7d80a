#pragma once

// Nonlinear integration of the heavy-top flow on SO(3) x R^3. Attitudes are
// updated multiplicatively through exp_so3, so trajectories stay on the
// group without renormalisation: a fourth-order Runge-Kutta-Munthe-Kaas
// scheme and an exponential midpoint rule. The vector field is the
// validated hamiltonian_vector_field from the phase-space model; nothing
// is re-derived here.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <vector>

#include "sleeptop/top.hpp"

namespace sleeptop {

enum class Scheme { lie_rk4, lie_midpoint };

inline const char* to_string(Scheme s) {
  return s == Scheme::lie_rk4 ? "lierk4" : "liemidpoint";
}

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 100.0;
  Scheme scheme = Scheme::lie_rk4;
  int renorm_check_interval = 10;  // sampling stride, in steps
};

struct TrajectorySample {
  double t = 0;
  PhasePoint state;
  double energy = 0;
  MomentumValue momentum;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
};

struct ConservationReport {
  double max_relative_energy_drift = 0;
  double max_j1_drift = 0;
  double max_j2_drift = 0;
  double max_orthogonality_defect = 0;
};

namespace detail {

/// Inverse right-trivialised differential of exp on so(3):
/// dexpinv_u(v) = v - u x v / 2 + gamma * u x (u x v),
/// gamma = (1 - (t/2) cot(t/2)) / t^2, t = |u|.
inline Vec3 dexpinv_so3(const Vec3& u, const Vec3& v) {
  const Vec3 uv = cross(u, v);
  const Vec3 uuv = cross(u, uv);
  const double t2 = dot(u, u);
  double gamma;
  if (t2 < 1e-8) {
    gamma = 1.0 / 12 + t2 / 720;
  } else {
    const double t = std::sqrt(t2);
    const double half = 0.5 * t;
    gamma = (1.0 - half * std::cos(half) / std::sin(half)) / t2;
  }
  return v - 0.5 * uv + gamma * uuv;
}

/// Group move: (exp(sigma_theta) * Lambda, pi + sigma_pi). The algebra
/// element reuses TangentVector, whose components are exactly the
/// right-trivialised increments.
inline PhasePoint move(const PhasePoint& z, const TangentVector& sigma) {
  return {exp_so3(sigma.dtheta) * z.attitude, z.momentum + sigma.dpi};
}

inline TangentVector scale(double s, const TangentVector& v) {
  return {s * v.dtheta, s * v.dpi};
}

inline bool all_finite(const PhasePoint& z) {
  for (double v : z.attitude.a) {
    if (!std::isfinite(v)) return false;
  }
  return sleeptop::all_finite(z.momentum);
}

inline PhasePoint rkmk4_step(const TopParameters& p, const PhasePoint& z, double h) {
  const TangentVector k1 = hamiltonian_vector_field(p, z);
  const TangentVector s2 = scale(0.5 * h, k1);
  TangentVector k2 = hamiltonian_vector_field(p, move(z, s2));
  k2.dtheta = dexpinv_so3(s2.dtheta, k2.dtheta);
  const TangentVector s3 = scale(0.5 * h, k2);
  TangentVector k3 = hamiltonian_vector_field(p, move(z, s3));
  k3.dtheta = dexpinv_so3(s3.dtheta, k3.dtheta);
  const TangentVector s4 = scale(h, k3);
  TangentVector k4 = hamiltonian_vector_field(p, move(z, s4));
  k4.dtheta = dexpinv_so3(s4.dtheta, k4.dtheta);
  const TangentVector sigma = {
      (h / 6) * (k1.dtheta + 2 * k2.dtheta + 2 * k3.dtheta + k4.dtheta),
      (h / 6) * (k1.dpi + 2 * k2.dpi + 2 * k3.dpi + k4.dpi)};
  return move(z, sigma);
}

inline PhasePoint midpoint_step(const TopParameters& p, const PhasePoint& z, double h) {
  TangentVector sigma = scale(h, hamiltonian_vector_field(p, z));
  for (int iter = 0; iter < 64; ++iter) {
    const TangentVector next = scale(h, hamiltonian_vector_field(p, move(z, scale(0.5, sigma))));
    const double change = std::max(max_abs(next.dtheta - sigma.dtheta),
                                   max_abs(next.dpi - sigma.dpi));
    const double size = std::max({1.0, max_abs(sigma.dtheta), max_abs(sigma.dpi)});
    sigma = next;
    if (change <= 1e-15 * size) return move(z, sigma);
  }
  throw step_rejected("midpoint iteration did not converge; reduce dt");
}

}  // namespace detail

/// Integrates the flow from z0 over [0, n*dt], n = round(t_end / dt), and
/// samples every renorm_check_interval steps (plus the final step).
/// Throws step_rejected when a stage produces non-finite values.
inline Trajectory integrate(const TopParameters& p, const PhasePoint& z0,
                            const IntegratorConfig& cfg) {
  validate(p);
  if (!(cfg.dt > 0) || !(cfg.t_end > 0) || cfg.renorm_check_interval < 1) {
    throw invalid_parameters("integrator config requires dt > 0, t_end > 0, interval >= 1");
  }
  const std::int64_t steps = std::max<std::int64_t>(1, std::llround(cfg.t_end / cfg.dt));

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(steps / cfg.renorm_check_interval) + 2);
  auto sample = [&](std::int64_t k, const PhasePoint& z) {
    traj.samples.push_back({k * cfg.dt, z, hamiltonian(p, z), momentum_map(z)});
  };

  PhasePoint z = z0;
  sample(0, z);
  for (std::int64_t k = 1; k <= steps; ++k) {
    z = cfg.scheme == Scheme::lie_rk4 ? detail::rkmk4_step(p, z, cfg.dt)
                                      : detail::midpoint_step(p, z, cfg.dt);
    if (!detail::all_finite(z)) {
      char text[64];
      std::snprintf(text, sizeof text, "non-finite state at t=%g", k * cfg.dt);
      throw step_rejected(text);
    }
    if (k % cfg.renorm_check_interval == 0 || k == steps) sample(k, z);
  }
  return traj;
}

/// Drift statistics of the conserved quantities along a trajectory.
inline ConservationReport conservation_report(const TopParameters&, const Trajectory& traj) {
  ConservationReport r;
  if (traj.samples.empty()) return r;
  const double h0 = traj.samples.front().energy;
  const MomentumValue j0 = traj.samples.front().momentum;
  const double energy_scale = std::fabs(h0) > 0 ? std::fabs(h0) : 1.0;
  for (const auto& s : traj.samples) {
    r.max_relative_energy_drift =
        std::max(r.max_relative_energy_drift, std::fabs(s.energy - h0) / energy_scale);
    r.max_j1_drift = std::max(r.max_j1_drift, std::fabs(s.momentum.j1 - j0.j1));
    r.max_j2_drift = std::max(r.max_j2_drift, std::fabs(s.momentum.j2 - j0.j2));
    r.max_orthogonality_defect =
        std::max(r.max_orthogonality_defect,
                 max_abs(transpose(s.state.attitude) * s.state.attitude - Mat3::identity()));
  }
  return r;
}

/// Angle between the body axis and the vertical.
inline double tilt_angle(const PhasePoint& z) {
  const Vec3 axis = z.attitude * e3;
  return std::atan2(norm(cross(e3, axis)), dot(e3, axis));
}

struct ProbeResult {
  double max_tilt = 0;
  std::optional<double> growth_rate;
};

/// Tilts the sleeping state by `tilt` about e1 (keeping the spatial
/// momentum) and integrates. For unstable spins the growth rate is the
/// least-squares slope of log(tilt) over the first window where the tilt
/// lies in [10*tilt, 0.1], past the transient and before saturation.
inline ProbeResult perturbation_probe(const TopParameters& p, double lambda, double tilt,
                                      const IntegratorConfig& cfg) {
  if (!(tilt > 0)) throw invalid_parameters("probe requires tilt > 0");
  const PhasePoint z0{exp_so3({tilt, 0, 0}), {0, 0, lambda * p.I3}};
  const Trajectory traj = integrate(p, z0, cfg);

  ProbeResult r;
  std::vector<std::pair<double, double>> window;  // (t, log tilt)
  bool entered = false, left = false;
  for (const auto& s : traj.samples) {
    const double angle = tilt_angle(s.state);
    r.max_tilt = std::max(r.max_tilt, angle);
    if (left) continue;
    if (angle > 0.1) {
      left = true;
      continue;
    }
    if (angle >= 10 * tilt) {
      entered = true;
      window.emplace_back(s.t, std::log(angle));
    } else if (entered) {
      left = true;  // fell back out of the band: keep only the first window
    }
  }
  if (window.size() >= 8) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (const auto& [t, y] : window) {
      st += t;
      sy += y;
      stt += t * t;
      sty += t * y;
    }
    const double n = static_cast<double>(window.size());
    const double denom = n * stt - st * st;
    if (denom > 0) r.growth_rate = (n * sty - st * sy) / denom;
  }
  return r;
}

}  // namespace sleeptop
