#pragma once

#include <cstdint>

#include "polegrad/rng.hpp"
#include "polegrad/tabular.hpp"

namespace polegrad {

// Oracle suite pitting every hand-derived gradient against an independent
// finite-difference of the quantity it claims to differentiate.
struct GradCheckReport {
  double ac_loss_max_rel_err = 0.0;    // vs central FD over all parameters
  double softmax_score_max_err = 0.0;  // vs central FD of log pi
  double lr_residual_max = 0.0;        // likelihood-ratio identity
  double pg_theorem_max = 0.0;         // tabular policy gradient theorem
};

struct GradCheckThresholds {
  double ac_loss = 1e-4;
  double softmax_score = 1e-6;
  double lr_residual = 1e-6;
  double pg_theorem = 1e-5;
};

GradCheckReport run_gradient_checks(int num_ac_episodes, int num_policy_instances,
                                    int num_mdp_instances, std::uint64_t seed);

bool gradient_checks_pass(const GradCheckReport& report,
                          const GradCheckThresholds& thresholds = {});

// Random small MDP (2-4 states, 2-3 actions, rewards in [0, 1], strictly
// positive transition and start probabilities).
TabularMdp random_mdp(Rng& rng, int max_states = 4, int max_actions = 3);

}  // namespace polegrad
