#include "polegrad/harness.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polegrad {

std::array<double, 4> lane_observation(const BicycleState& state, double current_steer,
                                       double wheelbase, const TransferMapping& mapping) {
  const double lateral_vel = state.speed * std::sin(state.heading);
  const double heading_rate = state.speed * std::tan(current_steer) / wheelbase;
  return {state.y * mapping.lateral_offset_scale,
          lateral_vel * mapping.lateral_vel_scale,
          state.wrapped_heading() * mapping.heading_err_scale,
          heading_rate * mapping.heading_rate_scale};
}

TransferResult transfer_drive(const TransferPolicy& policy, const TransferMapping& mapping,
                              const BicycleConfig& config, const BicycleState& initial,
                              double duration) {
  constexpr double kYLimit = 2.4;
  constexpr double kHeadingLimit = 15.0 * std::numbers::pi / 180.0;

  TransferResult result;
  result.metrics = {std::abs(initial.y), std::abs(initial.wrapped_heading()), true};

  const int steps = static_cast<int>(std::ceil(duration / config.dt - 1e-12));
  result.trajectory.reserve(steps + 1);
  BicycleState state = initial;
  double current_steer = 0.0;
  for (int k = 0; k < steps; ++k) {
    const std::array<double, 4> obs =
        lane_observation(state, current_steer, config.wheelbase, mapping);
    const int action = policy(obs);
    current_steer = action == 1 ? mapping.steer_command : -mapping.steer_command;
    const BicycleControl control{0.0, current_steer};
    const BicycleStepOutcome outcome = step_euler(state, control, config);
    result.trajectory.push_back({k * config.dt, state, control, outcome.clamped});
    state = outcome.state;

    const double abs_y = std::abs(state.y);
    const double abs_heading = std::abs(state.wrapped_heading());
    result.metrics.max_abs_y = std::max(result.metrics.max_abs_y, abs_y);
    result.metrics.max_abs_heading = std::max(result.metrics.max_abs_heading, abs_heading);
    if (abs_y > kYLimit || abs_heading > kHeadingLimit) result.metrics.survived = false;
  }
  result.trajectory.push_back({steps * config.dt, state, {}, false});
  return result;
}

TransferResult transfer_drive(const AcNetwork& actor, const TransferMapping& mapping,
                              const BicycleConfig& config, const BicycleState& initial,
                              double duration) {
  const TransferPolicy policy = [&actor](const std::array<double, 4>& obs) {
    const AcForward fwd = ac_forward(actor, obs);
    return fwd.probs[1] > fwd.probs[0] ? 1 : 0;  // ties break to action 0
  };
  return transfer_drive(policy, mapping, config, initial, duration);
}

std::optional<int> episodes_to_threshold(const std::vector<double>& episode_rewards,
                                         double threshold) {
  double trailing_sum = 0.0;
  for (std::size_t i = 0; i < episode_rewards.size(); ++i) {
    trailing_sum += episode_rewards[i];
    if (i >= 100) trailing_sum -= episode_rewards[i - 100];
    const std::size_t window = std::min<std::size_t>(i + 1, 100);
    if (trailing_sum / static_cast<double>(window) >= threshold) {
      return static_cast<int>(i + 1);
    }
  }
  return std::nullopt;
}

ComparisonReport compare_convergence(const CompareConfig& config,
                                     const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) {
    throw std::invalid_argument("compare_convergence: empty seed list");
  }
  ComparisonReport report;
  report.threshold = config.threshold;
  for (const std::uint64_t seed : seeds) {
    SeedComparison row;
    row.seed = seed;

    // MC race: reinforce mode, early stop once the trailing mean crosses.
    {
      Rng rng(seed);
      LinearPolicyParams theta;
      for (double& w : theta.theta) w = rng.uniform(0.0, 1.0);
      McConfig mc = config.mc;
      mc.mode = McMode::kReinforce;
      std::vector<double> rewards;
      double trailing_sum = 0.0;
      for (int episode = 1; episode <= mc.episodes; ++episode) {
        const McEpisodeRecord record = run_episode(config.env, theta, mc.mode, rng);
        theta = update_reinforce(theta, record, mc.lr, mc.gamma);
        const double reward = static_cast<double>(record.size());
        row.mc_lengths.push_back(static_cast<int>(record.size()));
        rewards.push_back(reward);
        trailing_sum += reward;
        if (episode > 100) trailing_sum -= rewards[episode - 101];
        const int window = std::min(episode, 100);
        if (trailing_sum / window >= config.threshold) break;
      }
      row.mc_episodes_to_threshold = episodes_to_threshold(rewards, config.threshold);
    }

    // AC race: same trailing-mean stopping definition.
    {
      Rng rng(seed);
      AcTrainConfig ac = config.ac;
      ac.solve_threshold = config.threshold;
      ac.stop_rule = AcTrainConfig::StopRule::kTrailingMean;
      const AcTrainResult trained = train_ac(config.env, ac, rng);
      row.ac_history = trained.history;
      std::vector<double> rewards;
      rewards.reserve(trained.history.size());
      for (const AcHistoryRow& h : trained.history) rewards.push_back(h.episode_reward);
      row.ac_episodes_to_threshold = episodes_to_threshold(rewards, config.threshold);
    }

    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace polegrad
