#pragma once

#include <array>
#include <numbers>
#include <string>

#include "polegrad/rng.hpp"

namespace polegrad {

struct EnvConfig {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double pole_half_length = 0.5;
  double force_mag = 10.0;
  double tau = 0.02;
  double theta_limit = 15.0 * std::numbers::pi / 180.0;
  double x_limit = 2.4;
  int max_steps = 500;
};

struct CartState {
  double x = 0.0;
  double x_dot = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
  int t = 0;

  std::array<double, 4> observation() const { return {x, x_dot, theta, theta_dot}; }
};

struct StepResult {
  CartState state;
  double reward;
  bool done;
};

// All four state components drawn uniformly from [-0.05, 0.05), t = 0.
CartState reset(const EnvConfig& config, Rng& rng);

bool is_terminal(const CartState& state, const EnvConfig& config);

// One Euler step of the cart-pole equations of motion under +/- force_mag.
// Reward is 1.0 for every step, including the terminating one. Throws if
// called on an already-terminal state.
StepResult step(const CartState& state, int action, const EnvConfig& config);

// Resets, then takes uniform-random actions until done; returns the episode
// length in steps.
int random_rollout(const EnvConfig& config, Rng& rng);

// Flat `key = value` (de)serialization for the CLI's --env-config.
EnvConfig env_config_from_file(const std::string& path);
void env_config_to_file(const EnvConfig& config, const std::string& path);

}  // namespace polegrad
