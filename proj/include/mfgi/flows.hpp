#pragma once

#include "mfgi/mfg.hpp"

namespace mfgi {

/// Forward recursion for the population flow:
///   rho_0 given, rho_{n+1}(s') = sum_s rho_n(s) sum_a pi_n(a|s) P(s'|s,a,rho_n),
/// with the kernel evaluated at the flow's own current distribution.
/// Occupancies are mu_n(s,a) = pi_n(a|s) rho_n(s).
FlowSequence population_flow(const FiniteMfg& mfg, const PolicySequence& policy);

/// Flow of a single agent following agent_policy while the population follows
/// population_policy: the same recursion, but the kernel is evaluated at the
/// population flow rho^(pi) (computed internally) instead of the agent's own
/// distribution. With agent_policy == population_policy this reproduces
/// population_flow bit for bit.
FlowSequence single_agent_flow(const FiniteMfg& mfg,
                               const PolicySequence& population_policy,
                               const PolicySequence& agent_policy);

/// Same recursion against an explicitly supplied mean field.
FlowSequence agent_flow(const FiniteMfg& mfg, const MeanField& mean_field,
                        const PolicySequence& agent_policy);

/// Expected total reward of an agent following agent_policy while kernel and
/// reward are evaluated along mean_field:
///   V = sum_n sum_{s,a} mu_n(s,a) r(s,a,rho_n).
/// When reward_override is given, r(s,a,rho_n) is replaced by f_n(s,a).
double policy_value(const FiniteMfg& mfg, const PolicySequence& agent_policy,
                    const MeanField& mean_field,
                    const NonStationaryReward* reward_override = nullptr);

struct BestResponse {
  PolicySequence policy;  // deterministic greedy, ties to the lowest action index
  double value = 0.0;     // sum_s rho_0(s) V_0(s)
};

/// Backward induction against a fixed mean field: V_H = 0,
///   Q_n(s,a) = r(s,a,rho_n) + sum_{s'} P(s'|s,a,rho_n) V_{n+1}(s'),
///   V_n(s) = max_a Q_n(s,a).
BestResponse best_response(const FiniteMfg& mfg, const MeanField& mean_field,
                           const NonStationaryReward* reward_override = nullptr);

/// Exploitability of a policy: the gain a single deviating agent can obtain
/// against the population flow induced by the policy,
///   max_pi' V(pi', rho^(pi)) - V(pi, rho^(pi)).
/// Nonnegative up to roundoff.
double exploitability(const FiniteMfg& mfg, const PolicySequence& policy);

/// Value lost by the whole population playing `policy` instead of the
/// equilibrium `expert`, each against its own flow:
///   V(expert, rho^(expert)) - V(policy, rho^(policy)).
/// For an equilibrium expert this upper-bounds exploitability(mfg, policy);
/// the two coincide whenever the best deviation against rho^(policy) still
/// attains the equilibrium value.
double equilibrium_value_gap(const FiniteMfg& mfg, const PolicySequence& expert,
                             const PolicySequence& policy);

/// l1 distance between the step-n state distributions of two flows.
double state_dist_l1(const FlowSequence& a, const FlowSequence& b, int n);

/// l1 distance between the step-n state-action occupancies of two flows.
double occupancy_l1(const FlowSequence& a, const FlowSequence& b, int n);

}  // namespace mfgi
