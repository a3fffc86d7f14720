#pragma once

#include <vector>

#include "mfgi/mfg.hpp"

namespace mfgi {

struct AttractorParams {
  double lipschitz_l = 0.0;  // L >= 0
  int horizon = 0;           // H >= 1
  double alpha = 0.0;        // jump probability in [0, 1]
};

/// Everything about one attractor instance evaluated by direct recursion,
/// independent of the generic flow/value machinery. Serves as the oracle the
/// generic pipeline is checked against.
struct ClosedFormProfile {
  std::vector<double> rho_pop_s1;        // rho_n^(pi_alpha)(s1), self-coupled flow
  std::vector<double> rho_expertpop_s1;  // rho_n of pi_alpha under the expert population
  std::vector<double> eps_bc;            // 2 alpha, constant in n
  std::vector<double> eps_vanilla;       // 2 (alpha + rho_expertpop * (1 - alpha))
  std::vector<double> eps_mfc;           // 2 (alpha + rho_pop * (1 - alpha))
  double nig = 0.0;                      // sum_n rho_pop_s1[n]
};

/// Two-state benchmark where state s1 absorbs and the chance of falling into
/// it from s0 under the safe action grows with the population mass already
/// there: P(s1|s0,a0,rho) = min(1, L rho(s1)), P(s1|s0,a1,rho) = 1,
/// P(s1|s1,a,rho) = 1. Rewards: 0 in s0, -1 in s1. rho_0 = (1, 0).
FiniteMfg build_attractor(double lipschitz_l, int horizon);

/// The one-parameter stationary policy family: pi_n(a1|s0) = alpha for all n,
/// uniform in s1 (action choice there is irrelevant).
PolicySequence alpha_policy(double alpha, int horizon);

ClosedFormProfile closed_form_profile(const AttractorParams& params);

}  // namespace mfgi
