#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "polegrad/bicycle.hpp"

using namespace polegrad;

namespace {

// Algebraic least-squares circle fit (Kasa): x^2 + y^2 = 2ax + 2by + c,
// solved by 3x3 normal equations; R = sqrt(a^2 + b^2 + c). Independent of
// the simulator's geometry.
double best_fit_radius(const std::vector<TrajectoryPoint>& traj) {
  double m[3][3] = {};
  double rhs[3] = {};
  for (const auto& p : traj) {
    const double x = p.state.x;
    const double y = p.state.y;
    const double row[3] = {2.0 * x, 2.0 * y, 1.0};
    const double z = x * x + y * y;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      rhs[i] += row[i] * z;
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[perm[r]][col]) > std::abs(m[perm[pivot]][col])) pivot = r;
    }
    std::swap(perm[col], perm[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[perm[r]][col] / m[perm[col]][col];
      for (int j = col; j < 3; ++j) m[perm[r]][j] -= f * m[perm[col]][j];
      rhs[perm[r]] -= f * rhs[perm[col]];
    }
  }
  double sol[3];
  for (int i = 2; i >= 0; --i) {
    double acc = rhs[perm[i]];
    for (int j = i + 1; j < 3; ++j) acc -= m[perm[i]][j] * sol[j];
    sol[i] = acc / m[perm[i]][i];
  }
  return std::sqrt(sol[0] * sol[0] + sol[1] * sol[1] + sol[2]);
}

std::vector<TrajectoryPoint> constant_steer_circle(double wheelbase, double phi,
                                                   double speed, double dt) {
  BicycleConfig config;
  config.wheelbase = wheelbase;
  config.dt = dt;
  config.steer_limit = std::numbers::pi / 2.0 - 0.01;
  BicycleState initial;
  initial.speed = speed;
  const double rho = wheelbase / std::tan(phi);
  const double duration = 2.0 * std::numbers::pi * rho / speed;
  const auto controller = [phi](const BicycleState&) {
    return BicycleControl{0.0, phi};
  };
  return simulate(initial, controller, config, duration);
}

}  // namespace

TEST_CASE("derivatives match the model equations") {
  BicycleState s;
  s.heading = 0.3;
  s.speed = 2.0;
  const BicycleControl c{0.5, 0.2};
  const auto d = derivatives(s, c, 0.3);
  CHECK(d.dx == doctest::Approx(2.0 * std::cos(0.3)).epsilon(1e-12));
  CHECK(d.dy == doctest::Approx(2.0 * std::sin(0.3)).epsilon(1e-12));
  CHECK(d.dheading == doctest::Approx(2.0 * std::tan(0.2) / 0.3).epsilon(1e-12));
  CHECK(d.dspeed == 0.5);
  CHECK_THROWS(derivatives(s, BicycleControl{0.0, std::numbers::pi / 2.0}, 0.3));
}

TEST_CASE("turning radius") {
  CHECK(turning_radius(0.3, 0.2618) == doctest::Approx(0.3 / std::tan(0.2618)).epsilon(1e-12));
  CHECK(turning_radius(1.0, std::numbers::pi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isinf(turning_radius(0.3, 0.0)));
  CHECK(turning_radius(0.3, -0.2) < 0.0);
  CHECK_THROWS(turning_radius(0.3, std::numbers::pi / 2.0));
}

TEST_CASE("heading wraps into (-pi, pi]") {
  BicycleState s;
  s.heading = 3.0 * std::numbers::pi;
  CHECK(s.wrapped_heading() == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  s.heading = -0.5;
  CHECK(s.wrapped_heading() == doctest::Approx(-0.5).epsilon(1e-12));
  s.heading = 2.0 * std::numbers::pi + 0.25;
  CHECK(s.wrapped_heading() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("steering beyond the limit is clamped and flagged") {
  BicycleConfig config;
  BicycleState s;
  s.speed = 1.0;
  const auto clamped = step_euler(s, {0.0, 1.0}, config);
  CHECK(clamped.clamped);
  const auto at_limit = step_euler(s, {0.0, config.steer_limit}, config);
  CHECK(!at_limit.clamped);
  CHECK(clamped.state.heading == at_limit.state.heading);
  const auto neg = step_euler(s, {0.0, -1.0}, config);
  CHECK(neg.clamped);
  CHECK(neg.state.heading == doctest::Approx(-at_limit.state.heading).epsilon(1e-15));
}

TEST_CASE("simulate includes the initial point and honors duration") {
  BicycleConfig config;
  config.dt = 0.01;
  BicycleState initial;
  initial.speed = 1.0;
  const auto traj = simulate(initial, [](const BicycleState&) { return BicycleControl{}; },
                             config, 0.1);
  CHECK(traj.size() == 11);
  CHECK(traj.front().t == 0.0);
  CHECK(traj.front().state.x == 0.0);
  CHECK(traj.back().t == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(traj.back().state.x == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("constant-steer trajectories close a circle of the predicted radius") {
  struct Case {
    double wheelbase, phi, speed;
  };
  for (const Case& c : {Case{0.3, 0.2618, 1.0}, Case{1.0, std::numbers::pi / 4.0, 2.0}}) {
    const double rho = c.wheelbase / std::tan(c.phi);
    const auto traj = constant_steer_circle(c.wheelbase, c.phi, c.speed, 1e-3);
    const auto& last = traj.back().state;
    const double closure = std::hypot(last.x, last.y);
    CHECK(closure < 0.01 * rho);
    CHECK(std::abs(best_fit_radius(traj) - rho) < 0.005 * rho);
  }
}

TEST_CASE("circle errors shrink with the step size (first-order integrator)") {
  const double rho = 0.3 / std::tan(0.2618);
  double radius_err[2];
  int i = 0;
  for (double dt : {1e-3, 1e-4}) {
    const auto traj = constant_steer_circle(0.3, 0.2618, 1.0, dt);
    const auto& last = traj.back().state;
    // Closure error is bounded by one chord length plus first-order drift.
    CHECK(std::hypot(last.x, last.y) < 2.0 * dt + 1e-12);
    radius_err[i++] = std::abs(best_fit_radius(traj) - rho);
  }
  CHECK(radius_err[1] < radius_err[0]);
}

TEST_CASE("speed is bit-constant under zero acceleration") {
  const auto traj = constant_steer_circle(1.0, 0.3, 1.75, 1e-3);
  for (const auto& p : traj) CHECK(p.state.speed == 1.75);
}

TEST_CASE("non-holonomic residual is zero on simulator output") {
  const auto straight = simulate(BicycleState{0, 0, 0.4, 1.2},
                                 [](const BicycleState&) { return BicycleControl{0.3, 0.0}; },
                                 BicycleConfig{}, 1.0);
  CHECK(nonholonomic_residual(straight, 0.01) == 0.0);
  const auto circle = constant_steer_circle(0.3, 0.2618, 1.0, 1e-3);
  CHECK(nonholonomic_residual(circle, 1e-3) == 0.0);
}

TEST_CASE("non-holonomic residual detects a hand-built side slip") {
  // Heading stays 0 while the position moves straight up: pure lateral slip
  // at speed s, so the residual equals s.
  const double s = 0.7;
  const double dt = 0.01;
  std::vector<TrajectoryPoint> traj;
  for (int k = 0; k <= 10; ++k) {
    TrajectoryPoint p{};
    p.t = k * dt;
    p.state.y = k * s * dt;
    p.state.speed = s;
    traj.push_back(p);
  }
  CHECK(nonholonomic_residual(traj, dt) == doctest::Approx(s).epsilon(1e-9));
}

TEST_CASE("mirror symmetry: negated steering reflects the trajectory") {
  BicycleConfig config;
  config.dt = 1e-3;
  BicycleState initial;
  initial.speed = 1.0;
  const auto left = simulate(initial, [](const BicycleState&) { return BicycleControl{0.1, 0.3}; },
                             config, 2.0);
  const auto right = simulate(initial, [](const BicycleState&) { return BicycleControl{0.1, -0.3}; },
                              config, 2.0);
  REQUIRE(left.size() == right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    CHECK(left[i].state.x == doctest::Approx(right[i].state.x).epsilon(1e-12));
    CHECK(left[i].state.y == doctest::Approx(-right[i].state.y).epsilon(1e-12));
    CHECK(left[i].state.heading == doctest::Approx(-right[i].state.heading).epsilon(1e-12));
    CHECK(left[i].state.speed == right[i].state.speed);
  }
}
