#include "mfgi/mfg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace mfgi {

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

PolicySequence PolicySequence::uniform(int horizon, int num_states, int num_actions) {
  PolicySequence pi;
  pi.horizon = horizon;
  pi.num_states = num_states;
  pi.num_actions = num_actions;
  pi.probs.assign(static_cast<size_t>(horizon) * num_states * num_actions,
                  1.0 / num_actions);
  return pi;
}

NonStationaryReward NonStationaryReward::zeros(int horizon, int num_states,
                                               int num_actions) {
  NonStationaryReward f;
  f.horizon = horizon;
  f.num_states = num_states;
  f.num_actions = num_actions;
  f.values.assign(static_cast<size_t>(horizon) * num_states * num_actions, 0.0);
  return f;
}

MeanField FlowSequence::states() const {
  MeanField mf;
  mf.horizon = horizon;
  mf.num_states = num_states;
  mf.dists = state_dists;
  return mf;
}

bool is_distribution(const double* p, int n, double tol) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (p[i] < 0.0) return false;
    sum += p[i];
  }
  return std::abs(sum - 1.0) <= tol;
}

void FiniteMfg::validate() const {
  check(num_states >= 1, "num_states must be positive");
  check(num_actions >= 1, "num_actions must be positive");
  check(horizon >= 1, "horizon must be positive");
  check(static_cast<int>(initial_distribution.size()) == num_states,
        "initial_distribution has wrong length");
  check(is_distribution(initial_distribution.data(), num_states),
        "initial_distribution is not a probability distribution");

  const size_t sas = static_cast<size_t>(num_states) * num_actions * num_states;
  if (const auto* tab = std::get_if<TabularKernel>(&kernel)) {
    check(tab->transitions.size() == sas, "tabular kernel has wrong shape");
    for (int s = 0; s < num_states; ++s)
      for (int a = 0; a < num_actions; ++a)
        check(is_distribution(tab->transitions.data() +
                                  (static_cast<size_t>(s) * num_actions + a) * num_states,
                              num_states),
              "tabular kernel row is not a distribution");
  } else if (const auto* lin = std::get_if<LinearCouplingKernel>(&kernel)) {
    check(lin->t0.size() == sas && lin->t1.size() == sas,
          "linear-coupling kernel has wrong shape");
    check(static_cast<int>(lin->coupling.size()) == num_states,
          "linear-coupling weights have wrong length");
    for (int s = 0; s < num_states; ++s)
      for (int a = 0; a < num_actions; ++a) {
        const size_t off = (static_cast<size_t>(s) * num_actions + a) * num_states;
        check(is_distribution(lin->t0.data() + off, num_states),
              "linear-coupling T0 row is not a distribution");
        check(is_distribution(lin->t1.data() + off, num_states),
              "linear-coupling T1 row is not a distribution");
      }
  } else {
    const auto& att = std::get<AttractorKernel>(kernel);
    check(att.lipschitz_l >= 0.0, "attractor parameter L must be nonnegative");
    check(num_states == 2 && num_actions == 2,
          "attractor kernel requires 2 states and 2 actions");
  }

  check(reward.base.size() == static_cast<size_t>(num_states) * num_actions,
        "reward base has wrong shape");
  for (double v : reward.base)
    check(std::isfinite(v), "reward base must be finite");
  check(std::isfinite(reward.congestion_coeff), "congestion_coeff must be finite");
}

void kernel_row(const FiniteMfg& mfg, int s, int a, const double* rho, double* out) {
  const int S = mfg.num_states;
  if (const auto* tab = std::get_if<TabularKernel>(&mfg.kernel)) {
    const double* row =
        tab->transitions.data() + (static_cast<size_t>(s) * mfg.num_actions + a) * S;
    std::copy(row, row + S, out);
  } else if (const auto* lin = std::get_if<LinearCouplingKernel>(&mfg.kernel)) {
    double w = 0.0;
    for (int i = 0; i < S; ++i) w += lin->coupling[i] * rho[i];
    w = std::clamp(w, 0.0, 1.0);
    const size_t off = (static_cast<size_t>(s) * mfg.num_actions + a) * S;
    for (int i = 0; i < S; ++i)
      out[i] = (1.0 - w) * lin->t0[off + i] + w * lin->t1[off + i];
  } else {
    const auto& att = std::get<AttractorKernel>(mfg.kernel);
    if (s == 1 || a == 1) {
      out[0] = 0.0;
      out[1] = 1.0;
    } else {
      const double w = std::min(1.0, att.lipschitz_l * rho[1]);
      out[0] = 1.0 - w;
      out[1] = w;
    }
  }
}

double reward_at(const FiniteMfg& mfg, int s, int a, const double* rho) {
  return mfg.reward.base_at(s, a, mfg.num_actions) -
         mfg.reward.congestion_coeff * rho[s];
}

bool population_independent_kernel(const FiniteMfg& mfg) {
  return std::holds_alternative<TabularKernel>(mfg.kernel);
}

void validate_policy(const FiniteMfg& mfg, const PolicySequence& policy,
                     const char* what) {
  check(policy.horizon == mfg.horizon,
        std::string(what) + ": horizon does not match the game");
  check(policy.num_states == mfg.num_states && policy.num_actions == mfg.num_actions,
        std::string(what) + ": state/action dimensions do not match the game");
  check(policy.probs.size() ==
            static_cast<size_t>(policy.horizon) * policy.num_states * policy.num_actions,
        std::string(what) + ": storage has wrong shape");
  for (int n = 0; n < policy.horizon; ++n)
    for (int s = 0; s < policy.num_states; ++s)
      check(is_distribution(policy.probs.data() +
                                (static_cast<size_t>(n) * policy.num_states + s) *
                                    policy.num_actions,
                            policy.num_actions),
            std::string(what) + ": action row is not a distribution");
}

void validate_mean_field(const FiniteMfg& mfg, const MeanField& mean_field) {
  check(mean_field.horizon == mfg.horizon, "mean field length does not match horizon");
  check(mean_field.num_states == mfg.num_states,
        "mean field state dimension does not match the game");
  check(mean_field.dists.size() ==
            static_cast<size_t>(mean_field.horizon) * mean_field.num_states,
        "mean field storage has wrong shape");
  for (int n = 0; n < mean_field.horizon; ++n)
    check(is_distribution(mean_field.row(n), mean_field.num_states),
          "mean field entry is not a distribution");
}

void validate_reward_override(const FiniteMfg& mfg, const NonStationaryReward& f) {
  check(f.horizon == mfg.horizon && f.num_states == mfg.num_states &&
            f.num_actions == mfg.num_actions,
        "reward override dimensions do not match the game");
  for (double v : f.values)
    check(v >= -1.0 && v <= 1.0, "reward override values must lie in [-1, 1]");
}

}  // namespace mfgi
