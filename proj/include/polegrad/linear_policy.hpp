#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace polegrad {

struct LinearPolicyParams {
  std::array<double, 4> theta{};
};

// sigma(theta . obs), the probability of action 1 under the binary
// sigmoid-threshold policy.
double sigmoid_prob(const LinearPolicyParams& params, const std::array<double, 4>& obs);

// 1 iff pi >= 0.5 (boundary goes right). Throws for pi outside [0, 1].
int threshold_action(double pi);

// Linear-softmax policy over a discrete state/action set. Features are
// supplied as an explicit map phi(s, a) -> vector; theta lives in feature
// space.
struct SoftmaxPolicyParams {
  std::vector<double> theta;
  int num_actions = 0;
  std::function<std::vector<double>(int state, int action)> features;
};

// pi(s, .) = softmax over linear scores phi(s, a) . theta, max-subtracted.
std::vector<double> softmax_policy(const SoftmaxPolicyParams& params, int state);

// Score function of the softmax policy:
//   grad_theta log pi(s, a) = phi(s, a) - sum_b pi(s, b) phi(s, b)
std::vector<double> softmax_score(const SoftmaxPolicyParams& params, int state, int action);

// Score of a unit-variance Gaussian policy with linear mean mu(s) = phi(s).theta:
//   grad_theta log N(a; mu(s), 1) = (a - mu(s)) * phi(s)
std::vector<double> gaussian_score(std::span<const double> theta,
                                   std::span<const double> features,
                                   double action);

// Max-norm of [numerical grad_theta pi(s,a)] - [pi(s,a) * score(s,a)], the
// two sides of the likelihood-ratio identity. Central differences at fd_eps.
double likelihood_ratio_residual(const SoftmaxPolicyParams& params, int state,
                                 int action, double fd_eps = 1e-5);

}  // namespace polegrad
