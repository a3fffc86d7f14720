#include "mfgi/game_io.hpp"

#include <fstream>

namespace mfgi {

namespace {

using nlohmann::json;

std::vector<double> flatten3(const json& j, int d0, int d1, int d2, const char* what) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(d0) * d1 * d2);
  if (!j.is_array() || static_cast<int>(j.size()) != d0)
    throw std::invalid_argument(std::string(what) + " has wrong outer dimension");
  for (const auto& plane : j) {
    if (!plane.is_array() || static_cast<int>(plane.size()) != d1)
      throw std::invalid_argument(std::string(what) + " has wrong middle dimension");
    for (const auto& row : plane) {
      if (!row.is_array() || static_cast<int>(row.size()) != d2)
        throw std::invalid_argument(std::string(what) + " has wrong inner dimension");
      for (const auto& v : row) out.push_back(v.get<double>());
    }
  }
  return out;
}

std::vector<double> flatten2(const json& j, int d0, int d1, const char* what) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(d0) * d1);
  if (!j.is_array() || static_cast<int>(j.size()) != d0)
    throw std::invalid_argument(std::string(what) + " has wrong outer dimension");
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != d1)
      throw std::invalid_argument(std::string(what) + " has wrong inner dimension");
    for (const auto& v : row) out.push_back(v.get<double>());
  }
  return out;
}

json nest3(const std::vector<double>& flat, int d0, int d1, int d2) {
  json out = json::array();
  size_t idx = 0;
  for (int i = 0; i < d0; ++i) {
    json plane = json::array();
    for (int k = 0; k < d1; ++k) {
      json row = json::array();
      for (int m = 0; m < d2; ++m) row.push_back(flat[idx++]);
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

json nest2(const std::vector<double>& flat, int d0, int d1) {
  json out = json::array();
  size_t idx = 0;
  for (int i = 0; i < d0; ++i) {
    json row = json::array();
    for (int k = 0; k < d1; ++k) row.push_back(flat[idx++]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

GameSpec game_from_json(const json& j) {
  GameSpec spec;
  FiniteMfg& m = spec.mfg;
  m.num_states = j.at("num_states").get<int>();
  m.num_actions = j.at("num_actions").get<int>();
  m.horizon = j.at("horizon").get<int>();

  const json& kernel = j.at("kernel");
  const std::string type = kernel.at("type").get<std::string>();
  const bool attractor = type == "attractor";

  if (j.contains("rho0")) {
    m.initial_distribution = j.at("rho0").get<std::vector<double>>();
  } else if (attractor) {
    m.initial_distribution = {1.0, 0.0};
  } else {
    throw std::invalid_argument("game spec is missing rho0");
  }

  if (type == "tabular") {
    TabularKernel k;
    k.transitions = flatten3(kernel.at("transitions"), m.num_states, m.num_actions,
                             m.num_states, "kernel.transitions");
    m.kernel = std::move(k);
  } else if (type == "linear_coupling") {
    LinearCouplingKernel k;
    k.t0 = flatten3(kernel.at("t0"), m.num_states, m.num_actions, m.num_states,
                    "kernel.t0");
    k.t1 = flatten3(kernel.at("t1"), m.num_states, m.num_actions, m.num_states,
                    "kernel.t1");
    k.coupling = kernel.at("coupling").get<std::vector<double>>();
    m.kernel = std::move(k);
  } else if (attractor) {
    m.kernel = AttractorKernel{kernel.at("lipschitz_l").get<double>()};
  } else {
    throw std::invalid_argument("unknown kernel type: " + type);
  }

  if (j.contains("reward")) {
    const json& reward = j.at("reward");
    m.reward.base =
        flatten2(reward.at("base"), m.num_states, m.num_actions, "reward.base");
    m.reward.congestion_coeff = reward.value("congestion_coeff", 0.0);
  } else if (attractor) {
    m.reward.base = {0.0, 0.0, -1.0, -1.0};
    m.reward.congestion_coeff = 0.0;
  } else {
    throw std::invalid_argument("game spec is missing reward");
  }

  m.validate();

  if (j.contains("expert_policy")) {
    PolicySequence pi;
    pi.horizon = m.horizon;
    pi.num_states = m.num_states;
    pi.num_actions = m.num_actions;
    pi.probs = flatten3(j.at("expert_policy"), m.horizon, m.num_states, m.num_actions,
                        "expert_policy");
    validate_policy(m, pi, "expert_policy");
    spec.expert_policy = std::move(pi);
  }
  return spec;
}

json game_to_json(const GameSpec& spec) {
  const FiniteMfg& m = spec.mfg;
  json j;
  j["num_states"] = m.num_states;
  j["num_actions"] = m.num_actions;
  j["horizon"] = m.horizon;
  j["rho0"] = m.initial_distribution;

  json kernel;
  if (const auto* tab = std::get_if<TabularKernel>(&m.kernel)) {
    kernel["type"] = "tabular";
    kernel["transitions"] =
        nest3(tab->transitions, m.num_states, m.num_actions, m.num_states);
  } else if (const auto* lin = std::get_if<LinearCouplingKernel>(&m.kernel)) {
    kernel["type"] = "linear_coupling";
    kernel["t0"] = nest3(lin->t0, m.num_states, m.num_actions, m.num_states);
    kernel["t1"] = nest3(lin->t1, m.num_states, m.num_actions, m.num_states);
    kernel["coupling"] = lin->coupling;
  } else {
    kernel["type"] = "attractor";
    kernel["lipschitz_l"] = std::get<AttractorKernel>(m.kernel).lipschitz_l;
  }
  j["kernel"] = std::move(kernel);

  j["reward"] = {{"base", nest2(m.reward.base, m.num_states, m.num_actions)},
                 {"congestion_coeff", m.reward.congestion_coeff}};

  if (spec.expert_policy)
    j["expert_policy"] =
        nest3(spec.expert_policy->probs, m.horizon, m.num_states, m.num_actions);
  return j;
}

GameSpec load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game spec: " + path);
  json j;
  in >> j;
  return game_from_json(j);
}

void save_game(const GameSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write game spec: " + path);
  out << game_to_json(spec).dump(2) << "\n";
}

json error_profile_to_json(const ErrorProfile& profile) {
  return {{"kind", error_kind_name(profile.kind)},
          {"per_step", profile.per_step},
          {"maximum", profile.maximum}};
}

json bound_report_to_json(const BoundReport& report) {
  json bounds = json::array();
  for (const auto& b : report.bounds)
    bounds.push_back(
        {{"theorem", b.label}, {"bound", b.bound}, {"satisfied", b.satisfied}});
  return {{"nig", report.nig}, {"bounds", std::move(bounds)}};
}

json trace_to_json(const MinMaxTrace& trace) {
  json iterations = json::array();
  for (const auto& it : trace.iterations)
    iterations.push_back({{"iteration", it.iteration},
                          {"objective", it.objective},
                          {"policy_params", it.policy_params},
                          {"witness", it.witness_values}});
  return {{"iterations", std::move(iterations)},
          {"converged", trace.converged},
          {"final_objective", trace.final_objective},
          {"final_policy", trace.final_policy.probs}};
}

}  // namespace mfgi
