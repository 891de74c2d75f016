#include "polegrad/mc_trainer.hpp"

#include <stdexcept>

namespace polegrad {

McEpisodeRecord run_episode(const EnvConfig& env_config, const LinearPolicyParams& params,
                            McMode mode, Rng& rng) {
  McEpisodeRecord record;
  CartState state = reset(env_config, rng);
  while (true) {
    const std::array<double, 4> pre_obs = state.observation();
    const double pi = sigmoid_prob(params, pre_obs);
    const int action = mode == McMode::kPaperFaithful
                           ? threshold_action(pi)
                           : (rng.unit() < pi ? 1 : 0);
    const StepResult result = step(state, action, env_config);
    // The listing stores the post-step observation next to the pi computed
    // from the pre-step one; reinforce mode records the pre-step observation
    // the gradient actually belongs to.
    const std::array<double, 4> stored_obs =
        mode == McMode::kPaperFaithful ? result.state.observation() : pre_obs;
    record.push_back({stored_obs, action, pi, result.reward});
    state = result.state;
    if (result.done) break;
  }
  return record;
}

LinearPolicyParams update_paper_faithful(LinearPolicyParams params,
                                         const McEpisodeRecord& record, double lr) {
  if (record.empty()) {
    throw std::invalid_argument("update_paper_faithful: empty record");
  }
  for (const McStep& step : record) {
    for (int i = 0; i < 4; ++i) {
      params.theta[i] += lr * (1.0 - step.pi) * (-step.obs[i]) * step.reward;
    }
  }
  return params;
}

std::array<double, 4> sigmoid_log_policy_grad(double pi, int action,
                                              const std::array<double, 4>& obs) {
  const double coeff = action == 1 ? (1.0 - pi) : -pi;
  std::array<double, 4> grad;
  for (int i = 0; i < 4; ++i) grad[i] = coeff * obs[i];
  return grad;
}

LinearPolicyParams update_reinforce(LinearPolicyParams params, const McEpisodeRecord& record,
                                    double lr, double gamma) {
  if (record.empty()) {
    throw std::invalid_argument("update_reinforce: empty record");
  }
  std::vector<double> returns(record.size());
  double tail = 0.0;
  for (std::size_t t = record.size(); t-- > 0;) {
    tail = record[t].reward + gamma * tail;
    returns[t] = tail;
  }
  std::array<double, 4> delta{};
  for (std::size_t t = 0; t < record.size(); ++t) {
    const auto grad = sigmoid_log_policy_grad(record[t].pi, record[t].action, record[t].obs);
    for (int i = 0; i < 4; ++i) delta[i] += returns[t] * grad[i];
  }
  for (int i = 0; i < 4; ++i) params.theta[i] += lr * delta[i];
  return params;
}

McTrainResult train_mc(const EnvConfig& env_config, const McConfig& config,
                       LinearPolicyParams theta0, Rng& rng) {
  McTrainResult result;
  result.theta = theta0;
  result.lengths.reserve(config.episodes);
  for (int episode = 0; episode < config.episodes; ++episode) {
    const McEpisodeRecord record = run_episode(env_config, result.theta, config.mode, rng);
    result.lengths.push_back(static_cast<int>(record.size()));
    result.theta = config.mode == McMode::kPaperFaithful
                       ? update_paper_faithful(result.theta, record, config.lr)
                       : update_reinforce(result.theta, record, config.lr, config.gamma);
  }
  return result;
}

}  // namespace polegrad
