#pragma once

#include <functional>
#include <vector>

namespace polegrad {

struct BicycleState {
  double x = 0.0;        // east (m)
  double y = 0.0;        // north (m)
  double heading = 0.0;  // rad, unwrapped
  double speed = 0.0;    // m/s

  // Heading mapped into (-pi, pi].
  double wrapped_heading() const;
};

struct BicycleControl {
  double accel = 0.0;  // m/s^2
  double steer = 0.0;  // rad, left positive
};

struct BicycleConfig {
  double wheelbase = 0.3;  // front-to-rear axle distance (m)
  double dt = 0.01;
  double steer_limit = 0.5236;  // 30 deg
};

struct BicycleDerivatives {
  double dx;
  double dy;
  double dheading;
  double dspeed;
};

// Rear-axle kinematic bicycle model:
//   [dx, dy, dheading] = speed * [cos h, sin h, tan(steer) / L],  dspeed = a.
// Throws for |steer| >= pi/2.
BicycleDerivatives derivatives(const BicycleState& state, const BicycleControl& control,
                               double wheelbase);

// L / tan(phi); returns +infinity for phi == 0 (straight motion). Sign
// follows the steering sign. Throws for |phi| >= pi/2.
double turning_radius(double wheelbase, double phi);

struct BicycleStepOutcome {
  BicycleState state;
  bool clamped;  // steering command exceeded steer_limit and was clamped
};

// Explicit Euler step; out-of-limit steering is clamped and flagged rather
// than rejected, so closed-loop controllers cannot crash a long run.
BicycleStepOutcome step_euler(const BicycleState& state, const BicycleControl& control,
                              const BicycleConfig& config);

struct TrajectoryPoint {
  double t;
  BicycleState state;
  BicycleControl control;  // control applied over [t, t + dt); zero at the final point
  bool clamped;
};

using BicycleController = std::function<BicycleControl(const BicycleState&)>;

// ceil(duration / dt) Euler steps; the returned trajectory includes the
// initial state, so it has one more point than steps taken.
std::vector<TrajectoryPoint> simulate(const BicycleState& initial,
                                      const BicycleController& controller,
                                      const BicycleConfig& config, double duration);

// Max over steps of |-dx sin h + dy cos h| / dt with the step-start heading;
// zero for any trajectory whose displacement stays colinear with the
// heading (the no-side-slip constraint).
double nonholonomic_residual(const std::vector<TrajectoryPoint>& trajectory, double dt);

}  // namespace polegrad
