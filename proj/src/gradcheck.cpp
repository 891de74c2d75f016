#include "polegrad/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "polegrad/actor_critic.hpp"
#include "polegrad/cartpole.hpp"
#include "polegrad/numerics.hpp"

namespace polegrad {

namespace {

// Max relative error of the analytic episode-loss gradient against central
// differences over every network parameter, on one frozen episode.
double check_one_ac_episode(Rng& rng) {
  EnvConfig env;
  AcNetwork net = ac_init(rng);
  AcEpisodeTape tape = ac_rollout(net, env, 10000, rng);

  std::vector<double> rewards(tape.steps.size());
  for (std::size_t t = 0; t < tape.steps.size(); ++t) rewards[t] = tape.steps[t].reward;
  const std::vector<double> returns = normalize_returns(discounted_returns(rewards, 0.99));

  const std::vector<double> analytic = ac_loss_gradient(net, tape, returns, true);
  const ScalarFn loss = [&](std::span<const double> params) {
    return ac_episode_loss(params, tape, returns, true);
  };
  // h must stay small: the ReLU trunk and the Huber boundary make the loss
  // piecewise, and a 1e-5 probe already crosses kinks on long episodes.
  const std::vector<double> numeric = finite_diff_central(loss, net.params, 1e-6);

  // At h = 1e-6 the remaining disagreement is subtractive-cancellation noise
  // (~eps * |loss| / h, observed ~1e-9 absolute), which only looks large
  // relative to components that are themselves numerically negligible. Floor
  // the denominator at 1e-3 of the gradient's max-norm so the check measures
  // such components absolutely while staying fully sensitive to real errors.
  double scale = 1e-8;
  for (const double g : analytic) scale = std::max(scale, std::abs(g));
  const double floor = 1e-3 * scale;

  double worst = 0.0;
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    const double err = std::abs(analytic[k] - numeric[k]);
    worst = std::max(
        worst, err / std::max({std::abs(analytic[k]), std::abs(numeric[k]), floor}));
  }
  return worst;
}

SoftmaxPolicyParams random_softmax_instance(Rng& rng, int num_states, int num_actions,
                                            int feature_dim) {
  SoftmaxPolicyParams params;
  params.num_actions = num_actions;
  params.theta.resize(feature_dim);
  for (double& w : params.theta) w = rng.uniform(-1.0, 1.0);
  // Dense random feature table shared through a copy held by the closure.
  std::vector<double> table(static_cast<std::size_t>(num_states) * num_actions * feature_dim);
  for (double& v : table) v = rng.uniform(-1.0, 1.0);
  params.features = [table = std::move(table), num_actions, feature_dim](int s, int a) {
    const std::size_t base = (static_cast<std::size_t>(s) * num_actions + a) * feature_dim;
    return std::vector<double>(table.begin() + base, table.begin() + base + feature_dim);
  };
  return params;
}

}  // namespace

TabularMdp random_mdp(Rng& rng, int max_states, int max_actions) {
  TabularMdp mdp;
  mdp.num_states = 2 + static_cast<int>(rng.uniform(0.0, max_states - 1));
  mdp.num_actions = 2 + static_cast<int>(rng.uniform(0.0, max_actions - 1));
  const std::size_t sa = static_cast<std::size_t>(mdp.num_states) * mdp.num_actions;
  mdp.transitions.resize(sa * mdp.num_states);
  mdp.rewards.resize(sa);
  mdp.start.resize(mdp.num_states);

  for (std::size_t i = 0; i < sa; ++i) {
    double total = 0.0;
    for (int s2 = 0; s2 < mdp.num_states; ++s2) {
      const double w = 0.05 + rng.uniform(0.0, 1.0);
      mdp.transitions[i * mdp.num_states + s2] = w;
      total += w;
    }
    for (int s2 = 0; s2 < mdp.num_states; ++s2) {
      mdp.transitions[i * mdp.num_states + s2] /= total;
    }
    mdp.rewards[i] = rng.uniform(0.0, 1.0);
  }
  double total = 0.0;
  for (double& p : mdp.start) {
    p = 0.05 + rng.uniform(0.0, 1.0);
    total += p;
  }
  for (double& p : mdp.start) p /= total;
  return mdp;
}

GradCheckReport run_gradient_checks(int num_ac_episodes, int num_policy_instances,
                                    int num_mdp_instances, std::uint64_t seed) {
  GradCheckReport report;
  Rng rng(seed);

  for (int i = 0; i < num_ac_episodes; ++i) {
    report.ac_loss_max_rel_err =
        std::max(report.ac_loss_max_rel_err, check_one_ac_episode(rng));
  }

  for (int i = 0; i < num_policy_instances; ++i) {
    const int num_states = 3;
    const int num_actions = 2 + (i % 3);
    const int feature_dim = 5;
    const SoftmaxPolicyParams params =
        random_softmax_instance(rng, num_states, num_actions, feature_dim);
    for (int s = 0; s < num_states; ++s) {
      for (int a = 0; a < num_actions; ++a) {
        const ScalarFn log_pi = [&](std::span<const double> theta) {
          SoftmaxPolicyParams shifted = params;
          shifted.theta.assign(theta.begin(), theta.end());
          return std::log(softmax_policy(shifted, s)[a]);
        };
        const std::vector<double> numeric =
            finite_diff_central(log_pi, params.theta, 1e-5);
        const std::vector<double> analytic = softmax_score(params, s, a);
        for (std::size_t k = 0; k < analytic.size(); ++k) {
          report.softmax_score_max_err =
              std::max(report.softmax_score_max_err, std::abs(analytic[k] - numeric[k]));
        }
        report.lr_residual_max =
            std::max(report.lr_residual_max, likelihood_ratio_residual(params, s, a));
      }
    }
  }

  for (int i = 0; i < num_mdp_instances; ++i) {
    const TabularMdp mdp = random_mdp(rng);
    std::vector<double> theta(static_cast<std::size_t>(mdp.num_states) * mdp.num_actions);
    for (double& w : theta) w = rng.uniform(-1.0, 1.0);
    const SoftmaxPolicyParams params = one_hot_softmax_params(mdp, std::move(theta));
    report.pg_theorem_max =
        std::max(report.pg_theorem_max, pg_theorem_discrepancy(mdp, params, 0.9));
  }

  return report;
}

bool gradient_checks_pass(const GradCheckReport& report,
                          const GradCheckThresholds& thresholds) {
  return report.ac_loss_max_rel_err < thresholds.ac_loss &&
         report.softmax_score_max_err < thresholds.softmax_score &&
         report.lr_residual_max < thresholds.lr_residual &&
         report.pg_theorem_max < thresholds.pg_theorem;
}

}  // namespace polegrad
