#include "polegrad/linear_policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polegrad/numerics.hpp"

namespace polegrad {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

double sigmoid_prob(const LinearPolicyParams& params, const std::array<double, 4>& obs) {
  double z = 0.0;
  for (int i = 0; i < 4; ++i) z += params.theta[i] * obs[i];
  return 1.0 / (1.0 + std::exp(-z));
}

int threshold_action(double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) {
    throw std::invalid_argument("threshold_action: probability outside [0, 1]");
  }
  return pi >= 0.5 ? 1 : 0;
}

std::vector<double> softmax_policy(const SoftmaxPolicyParams& params, int state) {
  if (params.num_actions <= 0) {
    throw std::invalid_argument("softmax_policy: empty action set");
  }
  std::vector<double> scores(params.num_actions);
  for (int a = 0; a < params.num_actions; ++a) {
    scores[a] = dot(params.features(state, a), params.theta);
  }
  const double max_score = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max_score);
    total += s;
  }
  for (double& s : scores) s /= total;
  return scores;
}

std::vector<double> softmax_score(const SoftmaxPolicyParams& params, int state, int action) {
  if (action < 0 || action >= params.num_actions) {
    throw std::invalid_argument("softmax_score: action out of range");
  }
  const std::vector<double> pi = softmax_policy(params, state);
  std::vector<double> score = params.features(state, action);
  for (int b = 0; b < params.num_actions; ++b) {
    const std::vector<double> phi = params.features(state, b);
    for (std::size_t k = 0; k < score.size(); ++k) score[k] -= pi[b] * phi[k];
  }
  return score;
}

std::vector<double> gaussian_score(std::span<const double> theta,
                                   std::span<const double> features,
                                   double action) {
  const double mean = dot(features, theta);
  std::vector<double> score(features.size());
  for (std::size_t k = 0; k < features.size(); ++k) {
    score[k] = (action - mean) * features[k];
  }
  return score;
}

double likelihood_ratio_residual(const SoftmaxPolicyParams& params, int state,
                                 int action, double fd_eps) {
  const ScalarFn prob_of_action = [&](std::span<const double> theta) {
    SoftmaxPolicyParams shifted = params;
    shifted.theta.assign(theta.begin(), theta.end());
    return softmax_policy(shifted, state)[action];
  };
  const std::vector<double> numeric =
      finite_diff_central(prob_of_action, params.theta, fd_eps);

  const double pi = softmax_policy(params, state)[action];
  const std::vector<double> score = softmax_score(params, state, action);

  double residual = 0.0;
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    residual = std::max(residual, std::abs(numeric[k] - pi * score[k]));
  }
  return residual;
}

}  // namespace polegrad
