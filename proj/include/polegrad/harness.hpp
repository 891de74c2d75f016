#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "polegrad/actor_critic.hpp"
#include "polegrad/bicycle.hpp"
#include "polegrad/cartpole.hpp"
#include "polegrad/mc_trainer.hpp"

namespace polegrad {

// Maps the lane-keeping state of the vehicle (straight reference line along
// the x-axis) onto the four cart-pole observation slots. The heading slots
// carry negative default scales so the transferred actor's "push right when
// the pole leans right" response becomes "steer right when pointing left",
// which is the corrective direction under the action-1 = +steer convention.
struct TransferMapping {
  double lateral_offset_scale = 1.0;   // y            -> cart position
  double lateral_vel_scale = 1.0;      // y rate       -> cart velocity
  double heading_err_scale = -1.0;     // heading      -> pole angle
  double heading_rate_scale = -1.0;    // heading rate -> pole angular velocity
  double steer_command = 0.2;          // rad applied per discrete action
};

std::array<double, 4> lane_observation(const BicycleState& state, double current_steer,
                                       double wheelbase, const TransferMapping& mapping);

struct TransferMetrics {
  double max_abs_y;
  double max_abs_heading;  // wrapped
  bool survived;           // |y| <= 2.4 and |heading| <= 15 deg throughout
};

struct TransferResult {
  std::vector<TrajectoryPoint> trajectory;
  TransferMetrics metrics;
};

// Binary action from the cart-pole observation; 1 means +steer_command.
using TransferPolicy = std::function<int(const std::array<double, 4>&)>;

// Closed-loop lane keeping at constant speed: observe via lane_observation,
// act through the policy, steer +/- steer_command, zero acceleration.
TransferResult transfer_drive(const TransferPolicy& policy, const TransferMapping& mapping,
                              const BicycleConfig& config, const BicycleState& initial,
                              double duration);

// Greedy (argmax, ties to action 0) actor head driving the vehicle.
TransferResult transfer_drive(const AcNetwork& actor, const TransferMapping& mapping,
                              const BicycleConfig& config, const BicycleState& initial,
                              double duration);

// First episode (1-based) whose trailing-window mean reward meets the
// threshold; the window is min(100, episodes so far).
std::optional<int> episodes_to_threshold(const std::vector<double>& episode_rewards,
                                         double threshold);

struct SeedComparison {
  std::uint64_t seed;
  std::vector<int> mc_lengths;
  std::vector<AcHistoryRow> ac_history;
  std::optional<int> mc_episodes_to_threshold;
  std::optional<int> ac_episodes_to_threshold;
};

struct ComparisonReport {
  std::vector<SeedComparison> rows;
  double threshold;
};

struct CompareConfig {
  EnvConfig env;           // shared by both methods; 200-step cap for the race
  AcTrainConfig ac;        // stop_rule is forced to the trailing-mean race rule
  McConfig mc;             // mode is forced to reinforce
  double threshold = 195.0;
};

// Trains both methods per seed and extracts episodes-to-threshold with the
// same trailing-window definition for each. MC runs in reinforce mode: the
// paper-faithful update rarely converges at all, so it cannot race.
ComparisonReport compare_convergence(const CompareConfig& config,
                                     const std::vector<std::uint64_t>& seeds);

// Race defaults, tuned on the 200-step-cap environment. The AC side detaches
// the critic value from the actor term so both methods use unbiased
// score-function gradients (like-for-like); gamma 0.999 and lr 0.015 keep its
// late-training variance low enough to hold a trailing-100 mean of 195.
inline CompareConfig default_compare_config() {
  CompareConfig config;
  config.env.max_steps = 200;
  config.ac.episode_cap = 5000;
  config.ac.solve_threshold = 195.0;
  config.ac.lr = 0.015;
  config.ac.gamma = 0.999;
  config.ac.value_grad_in_actor_loss = false;
  config.mc.mode = McMode::kReinforce;
  config.mc.episodes = 2000;
  config.mc.lr = 2e-4;
  config.mc.gamma = 1.0;
  return config;
}

}  // namespace polegrad
