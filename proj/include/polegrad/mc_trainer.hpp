#pragma once

#include <array>
#include <vector>

#include "polegrad/cartpole.hpp"
#include "polegrad/linear_policy.hpp"
#include "polegrad/rng.hpp"

namespace polegrad {

enum class McMode {
  // Reproduces the listing verbatim: deterministic threshold action, pi from
  // the pre-step observation stored with the post-step observation, update
  // lr * (1 - pi) * (-obs) * reward applied per timestep.
  kPaperFaithful,
  // Textbook REINFORCE: Bernoulli(pi) action sampling, pre-step observation,
  // update lr * G_t * grad log pi(a_t | s_t) batched per episode.
  kReinforce,
};

struct McConfig {
  double lr = 0.02;
  int episodes = 10;
  McMode mode = McMode::kPaperFaithful;
  double gamma = 1.0;  // reinforce mode only
};

struct McStep {
  std::array<double, 4> obs;
  int action;
  double pi;
  double reward;
};

using McEpisodeRecord = std::vector<McStep>;

// Rolls out one episode under the given mode and records per the mode's
// convention (see McMode).
McEpisodeRecord run_episode(const EnvConfig& env_config, const LinearPolicyParams& params,
                            McMode mode, Rng& rng);

// The listing's per-timestep update, applied in record order.
LinearPolicyParams update_paper_faithful(LinearPolicyParams params,
                                         const McEpisodeRecord& record, double lr);

// grad log pi for the sigmoid policy: (1 - pi) * obs for action 1,
// (-pi) * obs for action 0.
std::array<double, 4> sigmoid_log_policy_grad(double pi, int action,
                                              const std::array<double, 4>& obs);

// Batched REINFORCE update with return-to-go G_t at discount gamma.
LinearPolicyParams update_reinforce(LinearPolicyParams params, const McEpisodeRecord& record,
                                    double lr, double gamma);

struct McTrainResult {
  LinearPolicyParams theta;
  std::vector<int> lengths;  // one entry per episode
};

McTrainResult train_mc(const EnvConfig& env_config, const McConfig& config,
                       LinearPolicyParams theta0, Rng& rng);

}  // namespace polegrad
