#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "mfgi/adversarial.hpp"
#include "mfgi/imitation.hpp"
#include "mfgi/mfg.hpp"

namespace mfgi {

/// A game loaded from disk, optionally carrying the expert policy the file
/// declares (needed by the adversarial runner on non-attractor games).
struct GameSpec {
  FiniteMfg mfg;
  std::optional<PolicySequence> expert_policy;
};

/// JSON schema (field names are normative, see README):
///   num_states, num_actions, horizon, rho0,
///   kernel.type in {"tabular", "linear_coupling", "attractor"} with
///     transitions[s][a][s'] | t0/t1[s][a][s'] + coupling[s] | lipschitz_l,
///   reward.base[s][a], reward.congestion_coeff,
///   expert_policy[n][s][a] (optional).
/// For attractor kernels, rho0 and reward may be omitted and default to the
/// built-in benchmark values.
GameSpec game_from_json(const nlohmann::json& j);
nlohmann::json game_to_json(const GameSpec& spec);

GameSpec load_game(const std::string& path);
void save_game(const GameSpec& spec, const std::string& path);

nlohmann::json error_profile_to_json(const ErrorProfile& profile);
nlohmann::json bound_report_to_json(const BoundReport& report);
nlohmann::json trace_to_json(const MinMaxTrace& trace);

}  // namespace mfgi
