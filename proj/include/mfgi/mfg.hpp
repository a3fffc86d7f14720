#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mfgi {

/// Thrown when an operation is only defined for a restricted class of games
/// (e.g. occupancy-matching errors that require a population-independent
/// kernel) and the given game falls outside that class.
class unsupported_setting : public std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Transition kernel and reward specifications
// ---------------------------------------------------------------------------

/// Population-independent kernel: a fixed tensor T[s][a][s'].
struct TabularKernel {
  std::vector<double> transitions;  // [s][a][s'], row-major

  double at(int s, int a, int next, int num_states, int num_actions) const {
    return transitions[(static_cast<size_t>(s) * num_actions + a) * num_states + next];
  }
};

/// Population-coupled kernel of the form
///   P(.|s,a,rho) = (1-w(rho)) * T0[s][a][.] + w(rho) * T1[s][a][.]
/// with w(rho) = clip(sum_s coupling[s] * rho(s), 0, 1).
struct LinearCouplingKernel {
  std::vector<double> t0;        // [s][a][s']
  std::vector<double> t1;        // [s][a][s']
  std::vector<double> coupling;  // per-state weight c_s
};

/// Built-in two-state benchmark. State 1 is absorbing; from state 0, action 1
/// jumps to state 1 surely while action 0 falls in with probability
/// min(1, L * rho(s1)). Requires num_states == num_actions == 2.
struct AttractorKernel {
  double lipschitz_l = 0.0;
};

using KernelSpec = std::variant<TabularKernel, LinearCouplingKernel, AttractorKernel>;

/// Congestion-style reward: r(s,a,rho) = base[s][a] - congestion_coeff * rho(s).
struct RewardSpec {
  std::vector<double> base;       // [s][a]
  double congestion_coeff = 0.0;

  double base_at(int s, int a, int num_actions) const {
    return base[static_cast<size_t>(s) * num_actions + a];
  }
};

// ---------------------------------------------------------------------------
// Core domain types
// ---------------------------------------------------------------------------

/// Finite-state, finite-horizon mean-field game. The kernel and reward take
/// the current population state distribution as their third argument.
struct FiniteMfg {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<double> initial_distribution;  // rho_0, length num_states
  KernelSpec kernel;
  RewardSpec reward;

  /// Throws std::invalid_argument if shapes are inconsistent or any stored
  /// row fails to be a probability distribution within 1e-12.
  void validate() const;
};

/// Non-stationary stochastic policy pi = (pi_0, ..., pi_{H-1}),
/// probs[n][s][a] = pi_n(a|s).
struct PolicySequence {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> probs;  // [n][s][a]

  double at(int n, int s, int a) const {
    return probs[(static_cast<size_t>(n) * num_states + s) * num_actions + a];
  }
  double& at(int n, int s, int a) {
    return probs[(static_cast<size_t>(n) * num_states + s) * num_actions + a];
  }

  static PolicySequence uniform(int horizon, int num_states, int num_actions);
};

/// Length-H sequence of state distributions (a mean field).
struct MeanField {
  int horizon = 0;
  int num_states = 0;
  std::vector<double> dists;  // [n][s]

  double at(int n, int s) const {
    return dists[static_cast<size_t>(n) * num_states + s];
  }
  const double* row(int n) const {
    return dists.data() + static_cast<size_t>(n) * num_states;
  }
};

/// State distributions rho_n and state-action occupancies
/// mu_n(s,a) = pi_n(a|s) * rho_n(s) of one agent (or of the population).
struct FlowSequence {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> state_dists;         // [n][s]
  std::vector<double> state_action_dists;  // [n][s][a]

  double rho(int n, int s) const {
    return state_dists[static_cast<size_t>(n) * num_states + s];
  }
  double mu(int n, int s, int a) const {
    return state_action_dists[(static_cast<size_t>(n) * num_states + s) * num_actions + a];
  }
  const double* rho_row(int n) const {
    return state_dists.data() + static_cast<size_t>(n) * num_states;
  }

  /// Copies the state-distribution part into a standalone MeanField.
  MeanField states() const;
};

/// Population-independent non-stationary reward f with values in [-1, 1],
/// values[n][s][a] = f_n(s,a). Used both as a value-function override and as
/// the dual variable of the occupancy-matching formulations.
struct NonStationaryReward {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> values;  // [n][s][a]

  double at(int n, int s, int a) const {
    return values[(static_cast<size_t>(n) * num_states + s) * num_actions + a];
  }
  double& at(int n, int s, int a) {
    return values[(static_cast<size_t>(n) * num_states + s) * num_actions + a];
  }

  static NonStationaryReward zeros(int horizon, int num_states, int num_actions);
};

/// A batch of sampled length-H trajectories, each a sequence of
/// (state, action) pairs.
struct TrajectoryBatch {
  std::vector<std::vector<std::pair<int, int>>> trajectories;
  unsigned long long rng_seed = 0;
  std::string generating_policy_id;
};

// ---------------------------------------------------------------------------
// Kernel / reward evaluation
// ---------------------------------------------------------------------------

/// Writes P(.|s,a,rho) into out[0..num_states).
void kernel_row(const FiniteMfg& mfg, int s, int a, const double* rho, double* out);

double reward_at(const FiniteMfg& mfg, int s, int a, const double* rho);

/// True when the kernel ignores the population distribution by construction.
bool population_independent_kernel(const FiniteMfg& mfg);

// ---------------------------------------------------------------------------
// Validation helpers
// ---------------------------------------------------------------------------

/// Entries nonnegative and summing to 1 within tol.
bool is_distribution(const double* p, int n, double tol = 1e-12);

void validate_policy(const FiniteMfg& mfg, const PolicySequence& policy,
                     const char* what = "policy");

void validate_mean_field(const FiniteMfg& mfg, const MeanField& mean_field);

void validate_reward_override(const FiniteMfg& mfg, const NonStationaryReward& f);

}  // namespace mfgi
