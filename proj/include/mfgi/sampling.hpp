#pragma once

#include "mfgi/mfg.hpp"

namespace mfgi {

/// Simulates `count` independent agents against the precomputed population
/// flow of `policy` (mean-field limit: samples do not perturb the flow).
/// Deterministic given the seed.
TrajectoryBatch sample_trajectories(const FiniteMfg& mfg, const PolicySequence& policy,
                                    int count, unsigned long long seed,
                                    const std::string& policy_id = "");

}  // namespace mfgi
