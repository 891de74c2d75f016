#include "polegrad/actor_critic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "polegrad/kv.hpp"

namespace polegrad {

AcNetwork ac_init(Rng& rng, AdamConfig adam_config) {
  AcNetwork net(adam_config);
  const auto fill_glorot = [&](int offset, int count, int fan_in, int fan_out) {
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (int i = 0; i < count; ++i) {
      net.params[offset + i] = rng.uniform(-limit, limit);
    }
  };
  fill_glorot(AcNetwork::kOffsetW1, AcNetwork::kHidden * AcNetwork::kInputs,
              AcNetwork::kInputs, AcNetwork::kHidden);
  fill_glorot(AcNetwork::kOffsetWa, AcNetwork::kActions * AcNetwork::kHidden,
              AcNetwork::kHidden, AcNetwork::kActions);
  fill_glorot(AcNetwork::kOffsetWc, AcNetwork::kHidden, AcNetwork::kHidden, 1);
  return net;
}

AcForward ac_forward(std::span<const double> params, const std::array<double, 4>& obs) {
  if (params.size() != AcNetwork::kParamCount) {
    throw std::invalid_argument("ac_forward: wrong parameter count");
  }
  constexpr int kH = AcNetwork::kHidden;
  constexpr int kIn = AcNetwork::kInputs;
  constexpr int kA = AcNetwork::kActions;

  AcForward out;
  out.hidden.resize(kH);
  for (int i = 0; i < kH; ++i) {
    double z = params[AcNetwork::kOffsetB1 + i];
    for (int j = 0; j < kIn; ++j) {
      z += params[AcNetwork::kOffsetW1 + i * kIn + j] * obs[j];
    }
    out.hidden[i] = z > 0.0 ? z : 0.0;
  }

  std::array<double, kA> logits;
  for (int a = 0; a < kA; ++a) {
    double z = params[AcNetwork::kOffsetBa + a];
    for (int i = 0; i < kH; ++i) {
      z += params[AcNetwork::kOffsetWa + a * kH + i] * out.hidden[i];
    }
    logits[a] = z;
  }
  const double max_logit = std::max(logits[0], logits[1]);
  double total = 0.0;
  for (int a = 0; a < kA; ++a) total += std::exp(logits[a] - max_logit);
  const double log_total = std::log(total);
  for (int a = 0; a < kA; ++a) {
    out.log_probs[a] = logits[a] - max_logit - log_total;
    out.probs[a] = std::exp(out.log_probs[a]);
  }

  double v = params[AcNetwork::kOffsetBc];
  for (int i = 0; i < kH; ++i) {
    v += params[AcNetwork::kOffsetWc + i] * out.hidden[i];
  }
  out.value = v;
  return out;
}

std::vector<double> discounted_returns(const std::vector<double>& rewards, double gamma) {
  if (rewards.empty()) {
    throw std::invalid_argument("discounted_returns: empty reward list");
  }
  std::vector<double> returns(rewards.size());
  double discounted_sum = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    discounted_sum = rewards[t] + gamma * discounted_sum;
    returns[t] = discounted_sum;
  }
  return returns;
}

std::vector<double> normalize_returns(const std::vector<double>& returns, double eps) {
  if (returns.empty()) {
    throw std::invalid_argument("normalize_returns: empty list");
  }
  const double n = static_cast<double>(returns.size());
  double mean = 0.0;
  for (double r : returns) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : returns) var += (r - mean) * (r - mean);
  var /= n;  // population variance, matching np.std
  const double denom = std::sqrt(var) + eps;
  std::vector<double> out(returns.size());
  for (std::size_t i = 0; i < returns.size(); ++i) out[i] = (returns[i] - mean) / denom;
  return out;
}

double ac_episode_loss(std::span<const double> params, const AcEpisodeTape& tape,
                       std::span<const double> returns, bool value_grad_in_actor_loss) {
  if (tape.steps.size() != returns.size()) {
    throw std::invalid_argument("ac_episode_loss: tape/returns length mismatch");
  }
  double loss = 0.0;
  for (std::size_t t = 0; t < tape.steps.size(); ++t) {
    const AcTapeStep& step = tape.steps[t];
    const AcForward fwd = ac_forward(params, step.obs);
    const double baseline = value_grad_in_actor_loss ? fwd.value : step.value;
    loss += -fwd.log_probs[step.action] * (returns[t] - baseline);
    loss += huber(fwd.value, returns[t]);
  }
  return loss;
}

std::vector<double> ac_loss_gradient(const AcNetwork& net, const AcEpisodeTape& tape,
                                     std::span<const double> returns,
                                     bool value_grad_in_actor_loss) {
  if (tape.steps.size() != returns.size()) {
    throw std::invalid_argument("ac_loss_gradient: tape/returns length mismatch");
  }
  constexpr int kH = AcNetwork::kHidden;
  constexpr int kIn = AcNetwork::kInputs;
  constexpr int kA = AcNetwork::kActions;

  std::vector<double> grad(AcNetwork::kParamCount, 0.0);
  for (std::size_t t = 0; t < tape.steps.size(); ++t) {
    const AcTapeStep& step = tape.steps[t];
    const double diff = returns[t] - step.value;

    // d loss / d logits via the log-softmax of the sampled action.
    std::array<double, kA> dlogits;
    for (int a = 0; a < kA; ++a) {
      dlogits[a] = (step.probs[a] - (a == step.action ? 1.0 : 0.0)) * diff;
    }

    // d loss / d value: the actor term's -log_prob * (ret - v) contributes
    // +log_prob when the value is live; the Huber term contributes its usual
    // residual derivative.
    const double residual = returns[t] - step.value;
    double dvalue = std::abs(residual) <= 1.0 ? -residual
                                              : (residual > 0.0 ? -1.0 : 1.0);
    if (value_grad_in_actor_loss) dvalue += step.log_prob;

    std::array<double, kH> dhidden{};
    for (int a = 0; a < kA; ++a) {
      grad[AcNetwork::kOffsetBa + a] += dlogits[a];
      for (int i = 0; i < kH; ++i) {
        grad[AcNetwork::kOffsetWa + a * kH + i] += dlogits[a] * step.hidden[i];
        dhidden[i] += net.params[AcNetwork::kOffsetWa + a * kH + i] * dlogits[a];
      }
    }
    grad[AcNetwork::kOffsetBc] += dvalue;
    for (int i = 0; i < kH; ++i) {
      grad[AcNetwork::kOffsetWc + i] += dvalue * step.hidden[i];
      dhidden[i] += net.params[AcNetwork::kOffsetWc + i] * dvalue;
    }

    for (int i = 0; i < kH; ++i) {
      if (step.hidden[i] <= 0.0) continue;  // ReLU gate
      grad[AcNetwork::kOffsetB1 + i] += dhidden[i];
      for (int j = 0; j < kIn; ++j) {
        grad[AcNetwork::kOffsetW1 + i * kIn + j] += dhidden[i] * step.obs[j];
      }
    }
  }
  return grad;
}

AcEpisodeTape ac_rollout(const AcNetwork& net, const EnvConfig& env_config,
                         int max_steps_per_episode, Rng& rng) {
  AcEpisodeTape tape;
  CartState state = reset(env_config, rng);
  for (int t = 1; t < max_steps_per_episode; ++t) {
    const std::array<double, 4> obs = state.observation();
    AcForward fwd = ac_forward(net, obs);
    const int action = static_cast<int>(rng.choice(fwd.probs));
    const StepResult result = step(state, action, env_config);
    tape.steps.push_back({obs, std::move(fwd.hidden), fwd.probs, action,
                          fwd.log_probs[action], fwd.value, result.reward});
    state = result.state;
    if (result.done) break;
  }
  return tape;
}

AcUpdateResult ac_episode_update(AcNetwork& net, const EnvConfig& env_config,
                                 const AcTrainConfig& config, Rng& rng) {
  AcEpisodeTape tape = ac_rollout(net, env_config, config.max_steps_per_episode, rng);

  std::vector<double> rewards(tape.steps.size());
  double episode_reward = 0.0;
  for (std::size_t t = 0; t < tape.steps.size(); ++t) {
    rewards[t] = tape.steps[t].reward;
    episode_reward += rewards[t];
  }
  const std::vector<double> returns =
      normalize_returns(discounted_returns(rewards, config.gamma));

  const std::vector<double> grad =
      ac_loss_gradient(net, tape, returns, config.value_grad_in_actor_loss);
  net.adam.apply(net.params, grad);

  return {episode_reward, static_cast<int>(tape.steps.size())};
}

double update_running_reward(double running, double episode_reward, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("update_running_reward: alpha outside (0, 1)");
  }
  return alpha * episode_reward + (1.0 - alpha) * running;
}

AcTrainResult train_ac(const EnvConfig& env_config, const AcTrainConfig& config, Rng& rng,
                       std::ostream* log) {
  AcTrainResult result{ac_init(rng, {.lr = config.lr}), {}, std::nullopt};
  double running_reward = 0.0;
  double trailing_sum = 0.0;
  for (int episode = 1; episode <= config.episode_cap; ++episode) {
    const AcUpdateResult update = ac_episode_update(result.net, env_config, config, rng);
    running_reward = update_running_reward(running_reward, update.episode_reward,
                                           config.running_alpha);
    result.history.push_back({update.episode_reward, running_reward});

    if (log != nullptr && config.progress_every > 0 && episode % config.progress_every == 0) {
      char line[96];
      std::snprintf(line, sizeof(line), "running reward: %.2f at episode %d",
                    running_reward, episode);
      *log << line << '\n';
    }

    bool solved = false;
    if (config.stop_rule == AcTrainConfig::StopRule::kRunningReward) {
      solved = running_reward > config.solve_threshold;
    } else {
      const int window = std::min(episode, 100);
      trailing_sum += update.episode_reward;
      if (episode > 100) trailing_sum -= result.history[episode - 101].episode_reward;
      solved = trailing_sum / window >= config.solve_threshold;
    }
    if (solved) {
      result.solved_at = episode;
      break;
    }
  }
  return result;
}

double ac_greedy_episode(const AcNetwork& net, const EnvConfig& env_config, Rng& rng) {
  CartState state = reset(env_config, rng);
  double total = 0.0;
  while (true) {
    const AcForward fwd = ac_forward(net, state.observation());
    const int action = fwd.probs[1] > fwd.probs[0] ? 1 : 0;
    const StepResult result = step(state, action, env_config);
    total += result.reward;
    state = result.state;
    if (result.done) break;
  }
  return total;
}

void ac_save(const AcNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("ac_save: cannot open " + path);
  for (double p : net.params) out << format_double(p) << '\n';
}

AcNetwork ac_load(const std::string& path, AdamConfig adam_config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ac_load: cannot open " + path);
  AcNetwork net(adam_config);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (count >= AcNetwork::kParamCount) {
      throw std::runtime_error("ac_load: too many parameters in " + path);
    }
    net.params[count++] = parse_double(line);
  }
  if (count != AcNetwork::kParamCount) {
    throw std::runtime_error("ac_load: expected " + std::to_string(AcNetwork::kParamCount) +
                             " parameters, got " + std::to_string(count));
  }
  return net;
}

}  // namespace polegrad
