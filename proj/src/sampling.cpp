#include "mfgi/sampling.hpp"

#include <random>
#include <vector>

#include "mfgi/flows.hpp"

namespace mfgi {

namespace {

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined behavior of std::uniform_real_distribution so that
// batches are reproducible everywhere.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_index(const double* weights, int n, double u) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return n - 1;
}

}  // namespace

TrajectoryBatch sample_trajectories(const FiniteMfg& mfg, const PolicySequence& policy,
                                    int count, unsigned long long seed,
                                    const std::string& policy_id) {
  if (count < 1) throw std::invalid_argument("trajectory count must be at least 1");
  validate_policy(mfg, policy);

  const FlowSequence flow = population_flow(mfg, policy);
  const int S = mfg.num_states;
  const int A = mfg.num_actions;

  std::mt19937_64 rng(seed);
  TrajectoryBatch batch;
  batch.rng_seed = seed;
  batch.generating_policy_id = policy_id;
  batch.trajectories.resize(count);

  std::vector<double> action_row(A);
  std::vector<double> next_row(S);
  for (int t = 0; t < count; ++t) {
    auto& traj = batch.trajectories[t];
    traj.reserve(mfg.horizon);
    int s = sample_index(mfg.initial_distribution.data(), S, next_uniform(rng));
    for (int n = 0; n < mfg.horizon; ++n) {
      for (int a = 0; a < A; ++a) action_row[a] = policy.at(n, s, a);
      const int a = sample_index(action_row.data(), A, next_uniform(rng));
      traj.emplace_back(s, a);
      if (n + 1 < mfg.horizon) {
        kernel_row(mfg, s, a, flow.rho_row(n), next_row.data());
        s = sample_index(next_row.data(), S, next_uniform(rng));
      }
    }
  }
  return batch;
}

}  // namespace mfgi
