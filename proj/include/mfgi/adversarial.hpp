#pragma once

#include <string>
#include <vector>

#include "mfgi/mfg.hpp"

namespace mfgi {

/// The l1 distance between two occupancy sequences together with the reward
/// f in [-1,1]^(H x S x A) that attains it as an expectation difference:
///   sum_n ||mu_n^E - mu_n^pi||_1 = V_f(expert side) - V_f(policy side)
/// for f_n(s,a) = sign(mu_n^E(s,a) - mu_n^pi(s,a)).
struct IpmResult {
  double distance = 0.0;
  NonStationaryReward witness;  // entries in {-1, 0, +1}
  double gap_check = 0.0;       // |distance - witness value difference|
};

IpmResult ipm_witness(const FlowSequence& expert_occupancies,
                      const FlowSequence& policy_occupancies);

struct MinMaxIterate {
  int iteration = 0;
  double objective = 0.0;              // summed occupancy distance of this iterate
  std::vector<double> policy_params;   // family parameter if any, else the flat policy
  std::vector<double> witness_values;  // flat witness reward
};

struct MinMaxTrace {
  std::vector<MinMaxIterate> iterations;
  bool converged = false;
  PolicySequence final_policy;   // best iterate seen
  double final_objective = 0.0;  // its objective
};

struct SolverOptions {
  int max_iters = 50;
  double tolerance = 1e-9;
};

/// Alternating scheme for
///   min_pi sum_n ||mu_n^{(E)E} - mu_n^{(E)pi}||_1
///     = max_f min_pi (V_f(expert, rho^(E)) - V_f(pi, rho^(E))):
/// witness update via ipm_witness against the current policy's occupancy
/// under the expert population, then a best response to the witness reward in
/// the MDP induced by rho^(E). Plain alternation need not converge, so the
/// result is the best candidate seen: the recorded iterates plus the clone of
/// the supplied expert (whose distance is zero by definition). `init`
/// defaults to the uniform policy.
MinMaxTrace solve_vanilla_adversarial(const FiniteMfg& mfg, const PolicySequence& expert,
                                      const SolverOptions& options,
                                      const PolicySequence* init = nullptr);

/// Finite family of candidate policies for the control-inner mode, optionally
/// with a scalar parameter per member (recorded in the trace).
struct PolicyFamily {
  std::vector<PolicySequence> members;
  std::vector<double> params;  // empty, or one entry per member
};

/// The alpha-grid family of the built-in two-state benchmark.
PolicyFamily alpha_grid_family(int horizon, double step);

/// All deterministic non-stationary policies of the game. Refuses families
/// larger than 4096 members.
PolicyFamily deterministic_policy_family(const FiniteMfg& mfg);

/// Exact minimization of pi -> sum_n ||mu_n^{(E)E} - mu_n^{(pi)pi}||_1 over
/// the family: each candidate's inner maximum over witnesses is computed
/// exactly by ipm_witness and the minimum is taken by enumeration, with no
/// min/max swap.
MinMaxTrace solve_mfc_adversarial(const FiniteMfg& mfg, const PolicySequence& expert,
                                  const PolicyFamily& family,
                                  const SolverOptions& options = {});

}  // namespace mfgi
