#include "polegrad/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polegrad/numerics.hpp"

namespace polegrad {

namespace {

// Dense Gaussian elimination with partial pivoting; systems here are at most
// 10x10.
std::vector<double> solve_linear(int n, std::vector<double> a, std::vector<double> b) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
    }
    if (std::abs(a[pivot * n + col]) < 1e-14) {
      throw std::runtime_error("solve_linear: singular system");
    }
    if (pivot != col) {
      for (int k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(b[col], b[pivot]);
    }
    for (int row = col + 1; row < n; ++row) {
      const double factor = a[row * n + col] / a[col * n + col];
      for (int k = col; k < n; ++k) a[row * n + k] -= factor * a[col * n + k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (int row = n - 1; row >= 0; --row) {
    double sum = b[row];
    for (int k = row + 1; k < n; ++k) sum -= a[row * n + k] * x[k];
    x[row] = sum / a[row * n + row];
  }
  return x;
}

// Row-stochastic state transition matrix under the policy.
std::vector<double> chain_matrix(const TabularMdp& mdp,
                                 const std::vector<std::vector<double>>& pi) {
  const int n = mdp.num_states;
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < mdp.num_actions; ++a) {
      for (int s2 = 0; s2 < n; ++s2) {
        m[s * n + s2] += pi[s][a] * mdp.p(s, a, s2);
      }
    }
  }
  return m;
}

}  // namespace

SoftmaxPolicyParams one_hot_softmax_params(const TabularMdp& mdp,
                                           std::vector<double> theta) {
  const std::size_t dim = static_cast<std::size_t>(mdp.num_states) * mdp.num_actions;
  if (theta.size() != dim) {
    throw std::invalid_argument("one_hot_softmax_params: theta has wrong length");
  }
  SoftmaxPolicyParams params;
  params.theta = std::move(theta);
  params.num_actions = mdp.num_actions;
  const int num_actions = mdp.num_actions;
  params.features = [dim, num_actions](int s, int a) {
    std::vector<double> phi(dim, 0.0);
    phi[static_cast<std::size_t>(s) * num_actions + a] = 1.0;
    return phi;
  };
  return params;
}

std::vector<std::vector<double>> policy_table(const TabularMdp& mdp,
                                              const SoftmaxPolicyParams& params) {
  std::vector<std::vector<double>> pi(mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s) pi[s] = softmax_policy(params, s);
  return pi;
}

std::vector<double> exact_state_values(const TabularMdp& mdp,
                                       const std::vector<std::vector<double>>& pi,
                                       double gamma) {
  const int n = mdp.num_states;
  const std::vector<double> chain = chain_matrix(mdp, pi);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> b(n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (int s2 = 0; s2 < n; ++s2) {
      a[s * n + s2] = (s == s2 ? 1.0 : 0.0) - gamma * chain[s * n + s2];
    }
    for (int act = 0; act < mdp.num_actions; ++act) {
      b[s] += pi[s][act] * mdp.r(s, act);
    }
  }
  return solve_linear(n, std::move(a), std::move(b));
}

std::vector<double> exact_q_values(const TabularMdp& mdp,
                                   const std::vector<std::vector<double>>& pi,
                                   double gamma) {
  const std::vector<double> v = exact_state_values(mdp, pi, gamma);
  std::vector<double> q(static_cast<std::size_t>(mdp.num_states) * mdp.num_actions);
  for (int s = 0; s < mdp.num_states; ++s) {
    for (int a = 0; a < mdp.num_actions; ++a) {
      double value = mdp.r(s, a);
      for (int s2 = 0; s2 < mdp.num_states; ++s2) {
        value += gamma * mdp.p(s, a, s2) * v[s2];
      }
      q[s * mdp.num_actions + a] = value;
    }
  }
  return q;
}

std::vector<double> discounted_occupancy(const TabularMdp& mdp,
                                         const std::vector<std::vector<double>>& pi,
                                         double gamma) {
  // d = (I - gamma P^T)^{-1} mu0, the unnormalized occupancy.
  const int n = mdp.num_states;
  const std::vector<double> chain = chain_matrix(mdp, pi);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (int s2 = 0; s2 < n; ++s2) {
      a[s * n + s2] = (s == s2 ? 1.0 : 0.0) - gamma * chain[s2 * n + s];
    }
  }
  return solve_linear(n, std::move(a), mdp.start);
}

std::vector<double> stationary_distribution(const TabularMdp& mdp,
                                            const std::vector<std::vector<double>>& pi) {
  const int n = mdp.num_states;
  const std::vector<double> chain = chain_matrix(mdp, pi);
  std::vector<double> d(n, 1.0 / n);
  std::vector<double> next(n);
  for (int iter = 0; iter < 200000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int s = 0; s < n; ++s) {
      for (int s2 = 0; s2 < n; ++s2) next[s2] += d[s] * chain[s * n + s2];
    }
    double delta = 0.0;
    for (int s = 0; s < n; ++s) delta = std::max(delta, std::abs(next[s] - d[s]));
    d = next;
    if (delta < 1e-12) return d;
  }
  throw std::runtime_error("stationary_distribution: power iteration did not converge");
}

double start_value(const TabularMdp& mdp, const SoftmaxPolicyParams& params, double gamma) {
  const auto pi = policy_table(mdp, params);
  const std::vector<double> v = exact_state_values(mdp, pi, gamma);
  double j = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) j += mdp.start[s] * v[s];
  return j;
}

double average_value(const TabularMdp& mdp, const SoftmaxPolicyParams& params, double gamma) {
  const auto pi = policy_table(mdp, params);
  const std::vector<double> d = stationary_distribution(mdp, pi);
  const std::vector<double> v = exact_state_values(mdp, pi, gamma);
  double j = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) j += d[s] * v[s];
  return j;
}

double average_reward(const TabularMdp& mdp, const SoftmaxPolicyParams& params) {
  const auto pi = policy_table(mdp, params);
  const std::vector<double> d = stationary_distribution(mdp, pi);
  double j = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) {
    for (int a = 0; a < mdp.num_actions; ++a) j += d[s] * pi[s][a] * mdp.r(s, a);
  }
  return j;
}

double pg_theorem_discrepancy(const TabularMdp& mdp, const SoftmaxPolicyParams& params,
                              double gamma, double fd_eps) {
  const auto pi = policy_table(mdp, params);
  const std::vector<double> q = exact_q_values(mdp, pi, gamma);
  const std::vector<double> d = discounted_occupancy(mdp, pi, gamma);

  std::vector<double> rhs(params.theta.size(), 0.0);
  for (int s = 0; s < mdp.num_states; ++s) {
    for (int a = 0; a < mdp.num_actions; ++a) {
      const std::vector<double> score = softmax_score(params, s, a);
      const double weight = d[s] * pi[s][a] * q[s * mdp.num_actions + a];
      for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += weight * score[k];
    }
  }

  const ScalarFn objective = [&](std::span<const double> theta) {
    SoftmaxPolicyParams shifted = params;
    shifted.theta.assign(theta.begin(), theta.end());
    return start_value(mdp, shifted, gamma);
  };
  const std::vector<double> lhs = finite_diff_central(objective, params.theta, fd_eps);

  double discrepancy = 0.0;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    discrepancy = std::max(discrepancy, std::abs(lhs[k] - rhs[k]));
  }
  return discrepancy;
}

}  // namespace polegrad
