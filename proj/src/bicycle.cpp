#include "polegrad/bicycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace polegrad {

double BicycleState::wrapped_heading() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double h = std::fmod(heading, two_pi);
  if (h > std::numbers::pi) h -= two_pi;
  if (h <= -std::numbers::pi) h += two_pi;
  return h;
}

BicycleDerivatives derivatives(const BicycleState& state, const BicycleControl& control,
                               double wheelbase) {
  if (!(std::abs(control.steer) < std::numbers::pi / 2.0)) {
    throw std::domain_error("bicycle derivatives: steering at or beyond pi/2");
  }
  if (!(wheelbase > 0.0)) {
    throw std::invalid_argument("bicycle derivatives: wheelbase must be positive");
  }
  return {state.speed * std::cos(state.heading), state.speed * std::sin(state.heading),
          state.speed * std::tan(control.steer) / wheelbase, control.accel};
}

double turning_radius(double wheelbase, double phi) {
  if (!(std::abs(phi) < std::numbers::pi / 2.0)) {
    throw std::domain_error("turning_radius: steering at or beyond pi/2");
  }
  if (phi == 0.0) return std::numeric_limits<double>::infinity();
  return wheelbase / std::tan(phi);
}

BicycleStepOutcome step_euler(const BicycleState& state, const BicycleControl& control,
                              const BicycleConfig& config) {
  BicycleControl applied = control;
  bool clamped = false;
  if (std::abs(applied.steer) > config.steer_limit) {
    applied.steer = std::clamp(applied.steer, -config.steer_limit, config.steer_limit);
    clamped = true;
  }
  const BicycleDerivatives d = derivatives(state, applied, config.wheelbase);
  BicycleState next;
  next.x = state.x + config.dt * d.dx;
  next.y = state.y + config.dt * d.dy;
  next.heading = state.heading + config.dt * d.dheading;
  next.speed = state.speed + config.dt * d.dspeed;
  return {next, clamped};
}

std::vector<TrajectoryPoint> simulate(const BicycleState& initial,
                                      const BicycleController& controller,
                                      const BicycleConfig& config, double duration) {
  if (duration < 0.0) {
    throw std::invalid_argument("simulate: negative duration");
  }
  const int steps = static_cast<int>(std::ceil(duration / config.dt - 1e-12));
  std::vector<TrajectoryPoint> trajectory;
  trajectory.reserve(steps + 1);
  BicycleState state = initial;
  for (int k = 0; k < steps; ++k) {
    const BicycleControl control = controller(state);
    const BicycleStepOutcome outcome = step_euler(state, control, config);
    trajectory.push_back({k * config.dt, state, control, outcome.clamped});
    state = outcome.state;
  }
  trajectory.push_back({steps * config.dt, state, {}, false});
  return trajectory;
}

double nonholonomic_residual(const std::vector<TrajectoryPoint>& trajectory, double dt) {
  if (trajectory.size() < 2) {
    throw std::invalid_argument("nonholonomic_residual: need at least two points");
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double residual = 0.0;
  for (std::size_t k = 0; k + 1 < trajectory.size(); ++k) {
    const BicycleState& a = trajectory[k].state;
    const BicycleState& b = trajectory[k + 1].state;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double sin_h = std::sin(a.heading);
    const double cos_h = std::cos(a.heading);
    double cross = std::abs(-dx * sin_h + dy * cos_h);
    // Rounding of the position accumulation makes even a perfectly
    // heading-aligned step carry a cross term of a few ulps of the position
    // magnitude; anything below that floor is indistinguishable from zero at
    // double precision and reported as zero.
    const double noise_floor =
        8.0 * eps *
        (std::abs(a.x) + std::abs(b.x) + std::abs(a.y) + std::abs(b.y) +
         std::abs(dx) + std::abs(dy));
    if (cross <= noise_floor) cross = 0.0;
    residual = std::max(residual, cross / dt);
  }
  return residual;
}

}  // namespace polegrad
