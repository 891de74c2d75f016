#pragma once

#include <vector>

#include "polegrad/linear_policy.hpp"

namespace polegrad {

// Small finite MDP whose policy value can be computed exactly by a linear
// solve; the desk-scale setting in which the policy gradient theorem is
// verifiable against a finite-difference gradient of the true objective.
struct TabularMdp {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> transitions;  // [s][a][s'] row-major
  std::vector<double> rewards;      // [s][a]
  std::vector<double> start;        // start-state distribution

  double p(int s, int a, int s2) const {
    return transitions[(static_cast<std::size_t>(s) * num_actions + a) * num_states + s2];
  }
  double r(int s, int a) const {
    return rewards[static_cast<std::size_t>(s) * num_actions + a];
  }
};

// One-hot features over (state, action) pairs; theta has S*A entries.
SoftmaxPolicyParams one_hot_softmax_params(const TabularMdp& mdp,
                                           std::vector<double> theta);

// pi[s][a] for every state.
std::vector<std::vector<double>> policy_table(const TabularMdp& mdp,
                                              const SoftmaxPolicyParams& params);

// Exact V^pi via (I - gamma P^pi) V = r^pi.
std::vector<double> exact_state_values(const TabularMdp& mdp,
                                       const std::vector<std::vector<double>>& pi,
                                       double gamma);

// Exact Q^pi(s, a) = r(s,a) + gamma sum_s' P(s'|s,a) V^pi(s').
std::vector<double> exact_q_values(const TabularMdp& mdp,
                                   const std::vector<std::vector<double>>& pi,
                                   double gamma);

// Unnormalized discounted state occupancy from the start distribution:
// d(s) = sum_t gamma^t Pr(s_t = s).
std::vector<double> discounted_occupancy(const TabularMdp& mdp,
                                         const std::vector<std::vector<double>>& pi,
                                         double gamma);

// Stationary distribution of the policy-induced chain by power iteration to
// 1e-12. Throws if the chain does not converge (non-ergodic MDP).
std::vector<double> stationary_distribution(const TabularMdp& mdp,
                                            const std::vector<std::vector<double>>& pi);

// The three policy objectives. start_value (J1) is the tested objective of
// the gradient-theorem check; the other two are evaluation metrics computed
// from the same exact solves.
double start_value(const TabularMdp& mdp, const SoftmaxPolicyParams& params, double gamma);
double average_value(const TabularMdp& mdp, const SoftmaxPolicyParams& params, double gamma);
double average_reward(const TabularMdp& mdp, const SoftmaxPolicyParams& params);

// Max-norm discrepancy between the finite-difference gradient of the exact
// start value and the theorem's expectation
//   sum_s d(s) sum_a pi(s,a) score(s,a) Q(s,a).
double pg_theorem_discrepancy(const TabularMdp& mdp, const SoftmaxPolicyParams& params,
                              double gamma, double fd_eps = 1e-5);

}  // namespace polegrad
