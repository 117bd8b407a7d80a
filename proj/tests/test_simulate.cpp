#include <catch2/catch.hpp>

#include "support.hpp"

using namespace sleeptop;

namespace {

const TopParameters kOblate = testsupport::oblate();

PhasePoint tumbling_start() {
  return {exp_so3({0.4, 0.2, 0.1}), {0.3, -0.2, 2.0}};
}

}  // namespace

TEST_CASE("sleeping orbit is reproduced to roundoff", "[simulate]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10;
  const PhasePoint z0 = sleeping_point(kOblate, 2);
  const Trajectory traj = integrate(kOblate, z0, cfg);

  double worst_attitude = 0, worst_momentum = 0;
  for (const auto& s : traj.samples) {
    const Mat3 expected = exp_so3(s.t * 2 * e3);
    worst_attitude = std::max(worst_attitude, frobenius_norm(s.state.attitude - expected));
    worst_momentum = std::max(worst_momentum, max_abs(s.state.momentum - Vec3{0, 0, 3}));
  }
  REQUIRE(worst_attitude <= 1e-8);
  REQUIRE(worst_momentum <= 1e-8);

  const ConservationReport report = conservation_report(kOblate, traj);
  REQUIRE(report.max_relative_energy_drift <= 1e-10);
  REQUIRE(report.max_j1_drift <= 1e-10);
  REQUIRE(report.max_j2_drift <= 1e-10);
}

TEST_CASE("upright rest point is stationary", "[simulate]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 1;
  const Trajectory traj = integrate(kOblate, {Mat3::identity(), {0, 0, 0}}, cfg);
  for (const auto& s : traj.samples) {
    REQUIRE(max_abs(s.state.attitude - Mat3::identity()) == 0.0);
    REQUIRE(max_abs(s.state.momentum) == 0.0);
  }
}

TEST_CASE("hanging pendulum oscillates at sqrt(mgl/I1)", "[simulate]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 20;
  cfg.renorm_check_interval = 1;
  const double epsilon = 1e-3;
  // down position tilted by epsilon about e1, at rest
  const PhasePoint z0{exp_so3({M_PI - epsilon, 0, 0}), {0, 0, 0}};
  REQUIRE(dot(e3, z0.attitude * e3) < -0.99);
  const Trajectory traj = integrate(kOblate, z0, cfg);

  // the swing stays planar; e2 . (Lambda e3) is sinusoidal in t
  std::vector<double> crossings;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double prev = dot(e2, traj.samples[i - 1].state.attitude * e3);
    const double curr = dot(e2, traj.samples[i].state.attitude * e3);
    if ((prev < 0) != (curr < 0)) {
      const double t0 = traj.samples[i - 1].t;
      crossings.push_back(t0 + cfg.dt * prev / (prev - curr));
    }
  }
  REQUIRE(crossings.size() >= 4);
  const double half_period =
      (crossings.back() - crossings.front()) / (crossings.size() - 1);
  const double omega = M_PI / half_period;
  REQUIRE(omega == Approx(std::sqrt(kOblate.m * kOblate.g * kOblate.l / kOblate.I1))
                       .epsilon(0.01));
}

TEST_CASE("generic tumbling run conserves the invariants", "[simulate]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10;
  const Trajectory traj = integrate(kOblate, tumbling_start(), cfg);
  const ConservationReport report = conservation_report(kOblate, traj);
  REQUIRE(report.max_relative_energy_drift <= 1e-8);
  REQUIRE(report.max_j1_drift <= 1e-9);
  REQUIRE(report.max_j2_drift <= 1e-9);
  REQUIRE(report.max_orthogonality_defect <= 1e-8);
}

TEST_CASE("scheme orders measured against a fine reference", "[simulate]") {
  // The group-multiplicative schemes reproduce the sleeping orbit exactly
  // (the vector field is constant along it), so order is measured on a
  // tilted orbit over one revolution 2*pi/lambda.
  const PhasePoint z0{exp_so3({0.3, 0, 0}), {0, 0, 3}};
  const double horizon = M_PI;  // 2*pi/lambda at lambda = 2

  auto run = [&](double dt, Scheme scheme) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = horizon;
    cfg.scheme = scheme;
    cfg.renorm_check_interval = static_cast<int>(std::llround(horizon / dt));
    return integrate(kOblate, z0, cfg).samples.back();
  };

  for (Scheme scheme : {Scheme::lie_rk4, Scheme::lie_midpoint}) {
    const auto reference = run(horizon / 25600, Scheme::lie_rk4);
    const auto coarse = run(horizon / 160, scheme);
    const auto fine = run(horizon / 320, scheme);
    const double err_coarse =
        frobenius_norm(coarse.state.attitude - reference.state.attitude) +
        norm(coarse.state.momentum - reference.state.momentum);
    const double err_fine = frobenius_norm(fine.state.attitude - reference.state.attitude) +
                            norm(fine.state.momentum - reference.state.momentum);
    const double ratio = err_coarse / err_fine;
    if (scheme == Scheme::lie_rk4) {
      REQUIRE(ratio > 10.0);
      REQUIRE(ratio < 26.0);
    } else {
      REQUIRE(ratio > 3.0);
      REQUIRE(ratio < 5.5);
    }
  }
}

TEST_CASE("halving dt cuts the RK4 energy drift by about 16", "[simulate]") {
  auto drift = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 10;
    const Trajectory traj = integrate(kOblate, tumbling_start(), cfg);
    return conservation_report(kOblate, traj).max_relative_energy_drift;
  };
  const double ratio = drift(0.02) / drift(0.01);
  REQUIRE(ratio > 8.0);
  REQUIRE(ratio < 32.0);
}

TEST_CASE("midpoint drift grows sublinearly over long horizons", "[simulate]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 1000;
  cfg.scheme = Scheme::lie_midpoint;
  cfg.renorm_check_interval = 100;
  const Trajectory traj = integrate(kOblate, tumbling_start(), cfg);

  double drift_100 = 0, drift_1000 = 0;
  const double h0 = traj.samples.front().energy;
  for (const auto& s : traj.samples) {
    const double d = std::fabs(s.energy - h0) / std::fabs(h0);
    if (s.t <= 100) drift_100 = std::max(drift_100, d);
    drift_1000 = std::max(drift_1000, d);
  }
  REQUIRE(drift_1000 <= 10 * drift_100);
  REQUIRE(conservation_report(kOblate, traj).max_orthogonality_defect <= 1e-8);
}

TEST_CASE("trajectory attitudes remain rotations", "[simulate]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 50;
  for (Scheme scheme : {Scheme::lie_rk4, Scheme::lie_midpoint}) {
    cfg.scheme = scheme;
    const Trajectory traj = integrate(kOblate, tumbling_start(), cfg);
    for (const auto& s : traj.samples) {
      REQUIRE(is_rotation(s.state.attitude, 1e-8));
    }
  }
}

TEST_CASE("stable probe stays close to upright", "[simulate][probe]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 100;
  const ProbeResult probe = perturbation_probe(kOblate, 2, 1e-3, cfg);
  REQUIRE(probe.max_tilt <= 1e-2);
  REQUIRE_FALSE(probe.growth_rate.has_value());
}

TEST_CASE("unstable probes grow at the linearised rate", "[simulate][probe]") {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 60;

  // lambda = 0: the inverted-pendulum rate sqrt(mgl/I1) = 1
  const ProbeResult upright = perturbation_probe(kOblate, 0, 1e-6, cfg);
  REQUIRE(upright.max_tilt >= 0.5);
  REQUIRE(upright.growth_rate.has_value());
  REQUIRE(*upright.growth_rate == Approx(1.0).epsilon(0.05));

  // for F < 0 the maximal real part is sqrt(-F) / (2 I1), independent of eta
  for (double lambda : {0.5, 1.0}) {
    const double f = transition_invariants(kOblate, lambda, 0).F;
    const double expected = std::sqrt(-f) / (2 * kOblate.I1);
    const ProbeResult spinning = perturbation_probe(kOblate, lambda, 1e-6, cfg);
    REQUIRE(spinning.max_tilt >= 0.5);
    REQUIRE(spinning.growth_rate.has_value());
    REQUIRE(*spinning.growth_rate == Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("integrator rejects bad configs and bad states", "[simulate]") {
  IntegratorConfig bad;
  bad.dt = 0;
  REQUIRE_THROWS_AS(integrate(kOblate, sleeping_point(kOblate, 1), bad), invalid_parameters);
  IntegratorConfig cfg;
  REQUIRE_THROWS_AS(perturbation_probe(kOblate, 1, 0.0, cfg), invalid_parameters);

  // a non-finite initial state is rejected at the first step
  PhasePoint broken = sleeping_point(kOblate, 1);
  broken.momentum.x = std::numeric_limits<double>::quiet_NaN();
  IntegratorConfig small;
  small.dt = 1e-3;
  small.t_end = 1e-2;
  REQUIRE_THROWS_AS(integrate(kOblate, broken, small), step_rejected);
}
