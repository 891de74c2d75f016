#include <cmath>

#include "doctest.h"
#include "polegrad/gradcheck.hpp"
#include "polegrad/tabular.hpp"

using namespace polegrad;

namespace {

TabularMdp two_state_mdp() {
  TabularMdp mdp;
  mdp.num_states = 2;
  mdp.num_actions = 2;
  // action 0 tends to stay, action 1 tends to switch
  mdp.transitions = {
      0.9, 0.1,  // s0 a0
      0.2, 0.8,  // s0 a1
      0.3, 0.7,  // s1 a0
      0.6, 0.4,  // s1 a1
  };
  mdp.rewards = {1.0, 0.0, 0.5, 2.0};
  mdp.start = {0.7, 0.3};
  return mdp;
}

}  // namespace

TEST_CASE("policy gradient theorem on a fixed 2-state MDP") {
  const TabularMdp mdp = two_state_mdp();
  Rng rng(5);
  std::vector<double> theta(4);
  for (double& w : theta) w = rng.uniform(-1.0, 1.0);
  const auto params = one_hot_softmax_params(mdp, theta);
  CHECK(pg_theorem_discrepancy(mdp, params, 0.9) < 1e-5);
}

TEST_CASE("zero rewards make both sides of the theorem zero") {
  TabularMdp mdp = two_state_mdp();
  for (double& r : mdp.rewards) r = 0.0;
  const auto params = one_hot_softmax_params(mdp, {0.4, -0.2, 0.1, 0.9});
  CHECK(start_value(mdp, params, 0.9) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pg_theorem_discrepancy(mdp, params, 0.9) < 1e-9);
}

TEST_CASE("single action per state means zero gradient") {
  TabularMdp mdp;
  mdp.num_states = 2;
  mdp.num_actions = 1;
  mdp.transitions = {0.5, 0.5, 0.4, 0.6};
  mdp.rewards = {1.0, 2.0};
  mdp.start = {1.0, 0.0};
  const auto params = one_hot_softmax_params(mdp, {0.3, -0.7});
  // Score is identically zero, so the theorem RHS is zero, and J does not
  // depend on theta.
  CHECK(pg_theorem_discrepancy(mdp, params, 0.9) < 1e-9);
}

TEST_CASE("policy gradient theorem on random MDPs") {
  Rng rng(77);
  for (int i = 0; i < 10; ++i) {
    const TabularMdp mdp = random_mdp(rng);
    std::vector<double> theta(static_cast<std::size_t>(mdp.num_states) * mdp.num_actions);
    for (double& w : theta) w = rng.uniform(-1.0, 1.0);
    const auto params = one_hot_softmax_params(mdp, std::move(theta));
    CHECK(pg_theorem_discrepancy(mdp, params, 0.9) < 1e-5);
  }
}

TEST_CASE("exact values satisfy the Bellman equation") {
  const TabularMdp mdp = two_state_mdp();
  const auto params = one_hot_softmax_params(mdp, {0.1, 0.2, -0.3, 0.4});
  const auto pi = policy_table(mdp, params);
  const double gamma = 0.95;
  const auto v = exact_state_values(mdp, pi, gamma);
  const auto q = exact_q_values(mdp, pi, gamma);
  for (int s = 0; s < 2; ++s) {
    double expected = 0.0;
    for (int a = 0; a < 2; ++a) expected += pi[s][a] * q[s * 2 + a];
    CHECK(v[s] == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("average objectives computed from the stationary distribution") {
  const TabularMdp mdp = two_state_mdp();
  const auto params = one_hot_softmax_params(mdp, {0.0, 0.0, 0.0, 0.0});
  const auto pi = policy_table(mdp, params);

  const auto d = stationary_distribution(mdp, pi);
  CHECK(d[0] + d[1] == doctest::Approx(1.0).epsilon(1e-10));
  // Stationarity: d P = d.
  double flow0 = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) flow0 += d[s] * pi[s][a] * mdp.p(s, a, 0);
  }
  CHECK(flow0 == doctest::Approx(d[0]).epsilon(1e-9));

  // Average reward lies between reward extremes; average value between V's.
  const double j_avr = average_reward(mdp, params);
  CHECK(j_avr > 0.0);
  CHECK(j_avr < 2.0);
  const auto v = exact_state_values(mdp, pi, 0.9);
  const double j_avv = average_value(mdp, params, 0.9);
  CHECK(j_avv >= std::min(v[0], v[1]) - 1e-9);
  CHECK(j_avv <= std::max(v[0], v[1]) + 1e-9);
}

TEST_CASE("discounted occupancy sums to 1/(1-gamma)") {
  const TabularMdp mdp = two_state_mdp();
  const auto params = one_hot_softmax_params(mdp, {0.2, -0.1, 0.5, 0.3});
  const auto pi = policy_table(mdp, params);
  const double gamma = 0.9;
  const auto d = discounted_occupancy(mdp, pi, gamma);
  CHECK(d[0] + d[1] == doctest::Approx(1.0 / (1.0 - gamma)).epsilon(1e-9));
}
