#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "polegrad/cartpole.hpp"
#include "polegrad/numerics.hpp"
#include "polegrad/rng.hpp"

namespace polegrad {

// Shared-trunk network: 4 inputs -> 128 ReLU -> softmax over 2 actions plus
// a scalar value head. Parameters live in one flat vector so a single Adam
// state covers everything; gradients are computed by hand in
// ac_loss_gradient.
class AcNetwork {
 public:
  static constexpr int kInputs = 4;
  static constexpr int kHidden = 128;
  static constexpr int kActions = 2;

  // Flat layout: W1 (128x4) | b1 (128) | Wa (2x128) | ba (2) | Wc (128) | bc.
  static constexpr int kOffsetW1 = 0;
  static constexpr int kOffsetB1 = kOffsetW1 + kHidden * kInputs;
  static constexpr int kOffsetWa = kOffsetB1 + kHidden;
  static constexpr int kOffsetBa = kOffsetWa + kActions * kHidden;
  static constexpr int kOffsetWc = kOffsetBa + kActions;
  static constexpr int kOffsetBc = kOffsetWc + kHidden;
  static constexpr int kParamCount = kOffsetBc + 1;

  std::vector<double> params;
  AdamState adam;

  explicit AcNetwork(AdamConfig adam_config = {})
      : params(kParamCount, 0.0), adam(kParamCount, adam_config) {}
};

// Glorot-uniform weights (limit sqrt(6 / (fan_in + fan_out)) per layer),
// zero biases, zero Adam moments.
AcNetwork ac_init(Rng& rng, AdamConfig adam_config = {.lr = 0.01});

struct AcForward {
  std::vector<double> hidden;        // post-ReLU trunk activations
  std::array<double, 2> probs;
  std::array<double, 2> log_probs;   // stable log-softmax
  double value;
};

AcForward ac_forward(std::span<const double> params, const std::array<double, 4>& obs);

inline AcForward ac_forward(const AcNetwork& net, const std::array<double, 4>& obs) {
  return ac_forward(std::span<const double>(net.params), obs);
}

// returns[t] = sum_{k>=t} gamma^{k-t} r_k by backward recursion.
std::vector<double> discounted_returns(const std::vector<double>& rewards, double gamma);

// (r - mean) / (population std + eps) elementwise.
std::vector<double> normalize_returns(const std::vector<double>& returns,
                                      double eps = kFloat32Eps);

struct AcTapeStep {
  std::array<double, 4> obs;
  std::vector<double> hidden;   // cached trunk activations
  std::array<double, 2> probs;
  int action;
  double log_prob;   // of the sampled action, recorded at sampling time
  double value;
  double reward;
};

struct AcEpisodeTape {
  std::vector<AcTapeStep> steps;
};

struct AcTrainConfig {
  double gamma = 0.99;
  double lr = 0.01;
  int max_steps_per_episode = 10000;
  double solve_threshold = 195.0;
  double running_alpha = 0.05;
  // When true (faithful to the reference training loop) the critic value is
  // a live variable inside the actor loss term, so gradient flows into it
  // through both loss terms. When false the actor term treats it as a
  // constant baseline.
  bool value_grad_in_actor_loss = true;
  int episode_cap = 5000;
  // kRunningReward stops when the exponential running reward exceeds
  // solve_threshold; kTrailingMean stops when the mean of the last
  // min(100, episode) episode rewards does, which is the convergence-race
  // definition shared with the MC trainer.
  enum class StopRule { kRunningReward, kTrailingMean } stop_rule = StopRule::kRunningReward;
  int progress_every = 10;  // progress line period; <= 0 disables
};

// Episode loss given a frozen tape: sum_t -log pi(a_t) * (ret_t - v_t) +
// sum_t huber(v_t, ret_t), with probs and values recomputed from `params`
// and the tape's observations/actions. Returns are constants. When
// value_grad_in_actor_loss is false the diff term uses the tape's frozen
// values so the actor term carries no value dependence. This is the function
// the finite-difference oracle probes.
double ac_episode_loss(std::span<const double> params, const AcEpisodeTape& tape,
                       std::span<const double> returns, bool value_grad_in_actor_loss);

// Reverse-accumulation gradient of ac_episode_loss w.r.t. all parameters,
// using the tape's cached activations.
std::vector<double> ac_loss_gradient(const AcNetwork& net, const AcEpisodeTape& tape,
                                     std::span<const double> returns,
                                     bool value_grad_in_actor_loss);

// Rolls out one episode, sampling actions from the actor head.
AcEpisodeTape ac_rollout(const AcNetwork& net, const EnvConfig& env_config,
                         int max_steps_per_episode, Rng& rng);

struct AcUpdateResult {
  double episode_reward;
  int steps;
};

// One listing iteration: rollout, normalized discounted returns, summed
// actor + critic loss, one Adam step.
AcUpdateResult ac_episode_update(AcNetwork& net, const EnvConfig& env_config,
                                 const AcTrainConfig& config, Rng& rng);

double update_running_reward(double running, double episode_reward, double alpha);

struct AcHistoryRow {
  double episode_reward;
  double running_reward;
};

struct AcTrainResult {
  AcNetwork net;
  std::vector<AcHistoryRow> history;
  std::optional<int> solved_at;  // 1-based episode index
};

AcTrainResult train_ac(const EnvConfig& env_config, const AcTrainConfig& config, Rng& rng,
                       std::ostream* log = nullptr);

// One episode under argmax action selection (ties break to action 0);
// returns total reward.
double ac_greedy_episode(const AcNetwork& net, const EnvConfig& env_config, Rng& rng);

// Plain-text network (de)serialization: one parameter per line.
void ac_save(const AcNetwork& net, const std::string& path);
AcNetwork ac_load(const std::string& path, AdamConfig adam_config = {.lr = 0.01});

}  // namespace polegrad
