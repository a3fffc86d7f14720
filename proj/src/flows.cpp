#include "mfgi/flows.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace mfgi {

namespace {

// One step of the flow recursion. `kernel_rho` is the distribution the kernel
// is evaluated at (the flow's own row for a population, the population's row
// for a single agent); both recursions share this code so that they agree bit
// for bit when their inputs do.
void flow_step(const FiniteMfg& mfg, const PolicySequence& policy, int n,
               const double* current, const double* kernel_rho, double* next) {
  const int S = mfg.num_states;
  const int A = mfg.num_actions;
  std::vector<double> row(S);
  for (int s = 0; s < S; ++s) next[s] = 0.0;
  for (int s = 0; s < S; ++s) {
    if (current[s] == 0.0) continue;
    for (int a = 0; a < A; ++a) {
      const double w = current[s] * policy.at(n, s, a);
      if (w == 0.0) continue;
      kernel_row(mfg, s, a, kernel_rho, row.data());
      for (int next_s = 0; next_s < S; ++next_s) next[next_s] += w * row[next_s];
    }
  }
}

void fill_occupancies(const FiniteMfg& mfg, const PolicySequence& policy,
                      FlowSequence& flow) {
  const int S = mfg.num_states;
  const int A = mfg.num_actions;
  flow.state_action_dists.resize(static_cast<size_t>(mfg.horizon) * S * A);
  for (int n = 0; n < mfg.horizon; ++n)
    for (int s = 0; s < S; ++s)
      for (int a = 0; a < A; ++a)
        flow.state_action_dists[(static_cast<size_t>(n) * S + s) * A + a] =
            policy.at(n, s, a) * flow.rho(n, s);
}

FlowSequence run_flow(const FiniteMfg& mfg, const PolicySequence& policy,
                      const MeanField* kernel_field) {
  const int S = mfg.num_states;
  FlowSequence flow;
  flow.horizon = mfg.horizon;
  flow.num_states = S;
  flow.num_actions = mfg.num_actions;
  flow.state_dists.resize(static_cast<size_t>(mfg.horizon) * S);

  double* rho0 = flow.state_dists.data();
  for (int s = 0; s < S; ++s) rho0[s] = mfg.initial_distribution[s];
  for (int n = 0; n + 1 < mfg.horizon; ++n) {
    const double* current = flow.state_dists.data() + static_cast<size_t>(n) * S;
    const double* kernel_rho = kernel_field ? kernel_field->row(n) : current;
    double* next = flow.state_dists.data() + static_cast<size_t>(n + 1) * S;
    flow_step(mfg, policy, n, current, kernel_rho, next);
  }
  fill_occupancies(mfg, policy, flow);
  return flow;
}

}  // namespace

FlowSequence population_flow(const FiniteMfg& mfg, const PolicySequence& policy) {
  validate_policy(mfg, policy);
  return run_flow(mfg, policy, nullptr);
}

FlowSequence agent_flow(const FiniteMfg& mfg, const MeanField& mean_field,
                        const PolicySequence& agent_policy) {
  validate_policy(mfg, agent_policy, "agent policy");
  validate_mean_field(mfg, mean_field);
  return run_flow(mfg, agent_policy, &mean_field);
}

FlowSequence single_agent_flow(const FiniteMfg& mfg,
                               const PolicySequence& population_policy,
                               const PolicySequence& agent_policy) {
  validate_policy(mfg, population_policy, "population policy");
  validate_policy(mfg, agent_policy, "agent policy");
  const MeanField population = population_flow(mfg, population_policy).states();
  return run_flow(mfg, agent_policy, &population);
}

double policy_value(const FiniteMfg& mfg, const PolicySequence& agent_policy,
                    const MeanField& mean_field,
                    const NonStationaryReward* reward_override) {
  validate_policy(mfg, agent_policy, "agent policy");
  validate_mean_field(mfg, mean_field);
  if (reward_override) validate_reward_override(mfg, *reward_override);

  const FlowSequence flow = run_flow(mfg, agent_policy, &mean_field);
  double total = 0.0;
  for (int n = 0; n < mfg.horizon; ++n)
    for (int s = 0; s < mfg.num_states; ++s)
      for (int a = 0; a < mfg.num_actions; ++a) {
        const double m = flow.mu(n, s, a);
        if (m == 0.0) continue;
        const double r = reward_override ? reward_override->at(n, s, a)
                                         : reward_at(mfg, s, a, mean_field.row(n));
        total += m * r;
      }
  return total;
}

BestResponse best_response(const FiniteMfg& mfg, const MeanField& mean_field,
                           const NonStationaryReward* reward_override) {
  validate_mean_field(mfg, mean_field);
  if (reward_override) validate_reward_override(mfg, *reward_override);

  const int S = mfg.num_states;
  const int A = mfg.num_actions;
  BestResponse br;
  br.policy.horizon = mfg.horizon;
  br.policy.num_states = S;
  br.policy.num_actions = A;
  br.policy.probs.assign(static_cast<size_t>(mfg.horizon) * S * A, 0.0);

  std::vector<double> value_next(S, 0.0);  // V_H = 0
  std::vector<double> value_cur(S);
  std::vector<double> row(S);
  for (int n = mfg.horizon - 1; n >= 0; --n) {
    const double* rho = mean_field.row(n);
    for (int s = 0; s < S; ++s) {
      double best_q = 0.0;
      int best_a = 0;
      for (int a = 0; a < A; ++a) {
        const double r =
            reward_override ? reward_override->at(n, s, a) : reward_at(mfg, s, a, rho);
        kernel_row(mfg, s, a, rho, row.data());
        double q = r;
        for (int next_s = 0; next_s < S; ++next_s) q += row[next_s] * value_next[next_s];
        if (a == 0 || q > best_q) {
          best_q = q;
          best_a = a;
        }
      }
      value_cur[s] = best_q;
      br.policy.at(n, s, best_a) = 1.0;
    }
    value_next = value_cur;
  }

  br.value = 0.0;
  for (int s = 0; s < S; ++s) br.value += mfg.initial_distribution[s] * value_next[s];
  return br;
}

double exploitability(const FiniteMfg& mfg, const PolicySequence& policy) {
  const MeanField field = population_flow(mfg, policy).states();
  const BestResponse br = best_response(mfg, field);
  return br.value - policy_value(mfg, policy, field);
}

double equilibrium_value_gap(const FiniteMfg& mfg, const PolicySequence& expert,
                             const PolicySequence& policy) {
  const MeanField expert_field = population_flow(mfg, expert).states();
  const MeanField policy_field = population_flow(mfg, policy).states();
  return policy_value(mfg, expert, expert_field) -
         policy_value(mfg, policy, policy_field);
}

double state_dist_l1(const FlowSequence& a, const FlowSequence& b, int n) {
  double d = 0.0;
  for (int s = 0; s < a.num_states; ++s) d += std::abs(a.rho(n, s) - b.rho(n, s));
  return d;
}

double occupancy_l1(const FlowSequence& a, const FlowSequence& b, int n) {
  double d = 0.0;
  for (int s = 0; s < a.num_states; ++s)
    for (int act = 0; act < a.num_actions; ++act)
      d += std::abs(a.mu(n, s, act) - b.mu(n, s, act));
  return d;
}

}  // namespace mfgi
