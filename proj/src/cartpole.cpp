#include "polegrad/cartpole.hpp"

#include <cmath>
#include <stdexcept>

#include "polegrad/kv.hpp"

namespace polegrad {

CartState reset(const EnvConfig& /*config*/, Rng& rng) {
  CartState state;
  state.x = rng.uniform(-0.05, 0.05);
  state.x_dot = rng.uniform(-0.05, 0.05);
  state.theta = rng.uniform(-0.05, 0.05);
  state.theta_dot = rng.uniform(-0.05, 0.05);
  state.t = 0;
  return state;
}

bool is_terminal(const CartState& state, const EnvConfig& config) {
  return std::abs(state.theta) > config.theta_limit ||
         std::abs(state.x) > config.x_limit || state.t >= config.max_steps;
}

StepResult step(const CartState& state, int action, const EnvConfig& config) {
  if (action != 0 && action != 1) {
    throw std::invalid_argument("cartpole step: action must be 0 or 1");
  }
  if (is_terminal(state, config)) {
    throw std::logic_error("cartpole step: episode already terminal");
  }

  const double force = action == 1 ? config.force_mag : -config.force_mag;
  const double cos_theta = std::cos(state.theta);
  const double sin_theta = std::sin(state.theta);
  const double total_mass = config.cart_mass + config.pole_mass;
  const double pole_mass_length = config.pole_mass * config.pole_half_length;

  const double temp =
      (force + pole_mass_length * state.theta_dot * state.theta_dot * sin_theta) /
      total_mass;
  const double theta_acc =
      (config.gravity * sin_theta - cos_theta * temp) /
      (config.pole_half_length *
       (4.0 / 3.0 - config.pole_mass * cos_theta * cos_theta / total_mass));
  const double x_acc = temp - pole_mass_length * theta_acc * cos_theta / total_mass;

  CartState next;
  next.x = state.x + config.tau * state.x_dot;
  next.x_dot = state.x_dot + config.tau * x_acc;
  next.theta = state.theta + config.tau * state.theta_dot;
  next.theta_dot = state.theta_dot + config.tau * theta_acc;
  next.t = state.t + 1;

  return {next, 1.0, is_terminal(next, config)};
}

int random_rollout(const EnvConfig& config, Rng& rng) {
  CartState state = reset(config, rng);
  int steps = 0;
  while (true) {
    const int action = rng.unit() < 0.5 ? 0 : 1;
    const StepResult result = step(state, action, config);
    state = result.state;
    ++steps;
    if (result.done) break;
  }
  return steps;
}

namespace {

void read_if_present(const KvMap& map, const std::string& key, double& field) {
  if (const auto it = map.find(key); it != map.end()) field = parse_double(it->second);
}

}  // namespace

EnvConfig env_config_from_file(const std::string& path) {
  const KvMap map = kv_load(path);
  EnvConfig config;
  read_if_present(map, "gravity", config.gravity);
  read_if_present(map, "cart_mass", config.cart_mass);
  read_if_present(map, "pole_mass", config.pole_mass);
  read_if_present(map, "pole_half_length", config.pole_half_length);
  read_if_present(map, "force_mag", config.force_mag);
  read_if_present(map, "tau", config.tau);
  read_if_present(map, "theta_limit", config.theta_limit);
  read_if_present(map, "x_limit", config.x_limit);
  if (const auto it = map.find("max_steps"); it != map.end()) {
    config.max_steps = static_cast<int>(parse_long(it->second));
  }
  return config;
}

void env_config_to_file(const EnvConfig& config, const std::string& path) {
  KvMap map;
  map["gravity"] = format_double(config.gravity);
  map["cart_mass"] = format_double(config.cart_mass);
  map["pole_mass"] = format_double(config.pole_mass);
  map["pole_half_length"] = format_double(config.pole_half_length);
  map["force_mag"] = format_double(config.force_mag);
  map["tau"] = format_double(config.tau);
  map["theta_limit"] = format_double(config.theta_limit);
  map["x_limit"] = format_double(config.x_limit);
  map["max_steps"] = std::to_string(config.max_steps);
  kv_save(map, path);
}

}  // namespace polegrad
