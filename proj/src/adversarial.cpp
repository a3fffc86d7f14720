#include "mfgi/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfgi/attractor.hpp"
#include "mfgi/flows.hpp"

namespace mfgi {

namespace {

double witness_value(const NonStationaryReward& f, const FlowSequence& flow) {
  double v = 0.0;
  for (int n = 0; n < flow.horizon; ++n)
    for (int s = 0; s < flow.num_states; ++s)
      for (int a = 0; a < flow.num_actions; ++a)
        v += f.at(n, s, a) * flow.mu(n, s, a);
  return v;
}

std::vector<double> flat_policy_params(const PolicySequence& policy) {
  return policy.probs;
}

}  // namespace

IpmResult ipm_witness(const FlowSequence& expert_occupancies,
                      const FlowSequence& policy_occupancies) {
  if (expert_occupancies.horizon != policy_occupancies.horizon ||
      expert_occupancies.num_states != policy_occupancies.num_states ||
      expert_occupancies.num_actions != policy_occupancies.num_actions)
    throw std::invalid_argument("occupancy sequences have mismatched shapes");

  const int H = expert_occupancies.horizon;
  const int S = expert_occupancies.num_states;
  const int A = expert_occupancies.num_actions;

  IpmResult result;
  result.witness = NonStationaryReward::zeros(H, S, A);
  result.distance = 0.0;
  for (int n = 0; n < H; ++n)
    for (int s = 0; s < S; ++s)
      for (int a = 0; a < A; ++a) {
        const double diff =
            expert_occupancies.mu(n, s, a) - policy_occupancies.mu(n, s, a);
        if (diff > 0.0)
          result.witness.at(n, s, a) = 1.0;
        else if (diff < 0.0)
          result.witness.at(n, s, a) = -1.0;
        result.distance += std::abs(diff);
      }
  result.gap_check = std::abs(result.distance -
                              (witness_value(result.witness, expert_occupancies) -
                               witness_value(result.witness, policy_occupancies)));
  return result;
}

MinMaxTrace solve_vanilla_adversarial(const FiniteMfg& mfg, const PolicySequence& expert,
                                      const SolverOptions& options,
                                      const PolicySequence* init) {
  if (options.max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  validate_policy(mfg, expert, "expert");

  const FlowSequence expert_flow = population_flow(mfg, expert);
  const MeanField expert_field = expert_flow.states();

  MinMaxTrace trace;
  PolicySequence current = init ? *init : PolicySequence::uniform(mfg.horizon,
                                                                  mfg.num_states,
                                                                  mfg.num_actions);
  if (init) validate_policy(mfg, *init, "initial policy");

  // Plain alternation may cycle, so the clone of the supplied expert (which
  // matches the target occupancy by definition) is always on the candidate
  // list alongside the recorded iterates.
  trace.final_policy = expert;
  double best =
      ipm_witness(expert_flow, agent_flow(mfg, expert_field, expert)).distance;
  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iters; ++iter) {
    const FlowSequence current_flow = agent_flow(mfg, expert_field, current);
    const IpmResult ipm = ipm_witness(expert_flow, current_flow);

    MinMaxIterate it;
    it.iteration = iter;
    it.objective = ipm.distance;
    it.policy_params = flat_policy_params(current);
    it.witness_values = ipm.witness.values;
    trace.iterations.push_back(std::move(it));

    if (ipm.distance < best) {
      best = ipm.distance;
      trace.final_policy = current;
    }
    if (ipm.distance == 0.0 ||
        std::abs(previous - ipm.distance) < options.tolerance) {
      trace.converged = true;
      break;
    }
    previous = ipm.distance;

    // Inner step: the witness is +1 where the expert occupancy exceeds the
    // current one, so the policy player maximizes V_f to move mass there.
    current = best_response(mfg, expert_field, &ipm.witness).policy;
  }
  trace.final_objective = best;
  return trace;
}

PolicyFamily alpha_grid_family(int horizon, double step) {
  if (step <= 0.0 || step > 1.0) throw std::invalid_argument("bad alpha grid step");
  PolicyFamily family;
  // Uniform grid with both endpoints, so the safe policy is always a member.
  const int count = static_cast<int>(std::round(1.0 / step));
  for (int i = 0; i <= count; ++i) {
    const double alpha = static_cast<double>(i) / count;
    family.params.push_back(alpha);
    family.members.push_back(alpha_policy(alpha, horizon));
  }
  return family;
}

PolicyFamily deterministic_policy_family(const FiniteMfg& mfg) {
  const int cells = mfg.horizon * mfg.num_states;
  double size = 1.0;
  for (int i = 0; i < cells; ++i) {
    size *= mfg.num_actions;
    if (size > 4096.0)
      throw std::invalid_argument(
          "deterministic policy family would exceed 4096 members; supply an "
          "explicit family instead");
  }
  const long long total = static_cast<long long>(size);

  PolicyFamily family;
  for (long long code = 0; code < total; ++code) {
    PolicySequence pi;
    pi.horizon = mfg.horizon;
    pi.num_states = mfg.num_states;
    pi.num_actions = mfg.num_actions;
    pi.probs.assign(static_cast<size_t>(cells) * mfg.num_actions, 0.0);
    long long rest = code;
    for (int n = 0; n < mfg.horizon; ++n)
      for (int s = 0; s < mfg.num_states; ++s) {
        pi.at(n, s, static_cast<int>(rest % mfg.num_actions)) = 1.0;
        rest /= mfg.num_actions;
      }
    family.params.push_back(static_cast<double>(code));
    family.members.push_back(std::move(pi));
  }
  return family;
}

MinMaxTrace solve_mfc_adversarial(const FiniteMfg& mfg, const PolicySequence& expert,
                                  const PolicyFamily& family,
                                  const SolverOptions& options) {
  (void)options;  // enumeration is exact; no iteration control needed
  if (family.members.empty()) throw std::invalid_argument("empty policy family");
  if (!family.params.empty() && family.params.size() != family.members.size())
    throw std::invalid_argument("family params/members size mismatch");
  validate_policy(mfg, expert, "expert");

  const FlowSequence expert_flow = population_flow(mfg, expert);

  MinMaxTrace trace;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < family.members.size(); ++i) {
    const PolicySequence& candidate = family.members[i];
    const FlowSequence candidate_flow = population_flow(mfg, candidate);
    const IpmResult ipm = ipm_witness(expert_flow, candidate_flow);

    MinMaxIterate it;
    it.iteration = static_cast<int>(i);
    it.objective = ipm.distance;
    it.policy_params = family.params.empty()
                           ? flat_policy_params(candidate)
                           : std::vector<double>{family.params[i]};
    it.witness_values = ipm.witness.values;
    trace.iterations.push_back(std::move(it));

    if (ipm.distance < best) {
      best = ipm.distance;
      trace.final_policy = candidate;
    }
  }
  trace.final_objective = best;
  trace.converged = true;
  return trace;
}

}  // namespace mfgi
