#include "mfgi/imitation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mfgi/flows.hpp"

namespace mfgi {

namespace {

ErrorProfile occupancy_profile(ErrorKind kind, const FlowSequence& expert_flow,
                               const FlowSequence& apprentice_flow) {
  ErrorProfile profile;
  profile.kind = kind;
  profile.per_step.resize(expert_flow.horizon);
  profile.maximum = 0.0;
  for (int n = 0; n < expert_flow.horizon; ++n) {
    profile.per_step[n] = occupancy_l1(expert_flow, apprentice_flow, n);
    profile.maximum = std::max(profile.maximum, profile.per_step[n]);
  }
  return profile;
}

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random point of the simplex via sorted uniform spacings.
std::vector<double> random_distribution(int n, std::mt19937_64& rng) {
  if (n == 1) return {1.0};
  std::vector<double> cuts(n - 1);
  for (auto& c : cuts) c = next_uniform(rng);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> p(n);
  double prev = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    p[i] = cuts[i] - prev;
    prev = cuts[i];
  }
  p[n - 1] = 1.0 - prev;
  return p;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BC: return "BC";
    case ErrorKind::ADV: return "ADV";
    case ErrorKind::VANILLA_ADV: return "VANILLA_ADV";
    case ErrorKind::MFC_ADV: return "MFC_ADV";
  }
  return "?";
}

ErrorProfile bc_error(const FiniteMfg& mfg, const PolicySequence& expert,
                      const PolicySequence& apprentice) {
  validate_policy(mfg, expert, "expert");
  validate_policy(mfg, apprentice, "apprentice");
  const FlowSequence expert_flow = population_flow(mfg, expert);

  ErrorProfile profile;
  profile.kind = ErrorKind::BC;
  profile.per_step.resize(mfg.horizon);
  profile.maximum = 0.0;
  for (int n = 0; n < mfg.horizon; ++n) {
    double e = 0.0;
    for (int s = 0; s < mfg.num_states; ++s) {
      const double w = expert_flow.rho(n, s);
      if (w == 0.0) continue;
      double row_dist = 0.0;
      for (int a = 0; a < mfg.num_actions; ++a)
        row_dist += std::abs(apprentice.at(n, s, a) - expert.at(n, s, a));
      e += w * row_dist;
    }
    profile.per_step[n] = e;
    profile.maximum = std::max(profile.maximum, e);
  }
  return profile;
}

ErrorProfile adv_error(const FiniteMfg& mfg, const PolicySequence& expert,
                       const PolicySequence& apprentice) {
  if (!population_independent_kernel(mfg))
    throw unsupported_setting(
        "the occupancy-matching error of a shared kernel is only defined for "
        "population-independent (tabular) kernels");
  return occupancy_profile(ErrorKind::ADV, population_flow(mfg, expert),
                           population_flow(mfg, apprentice));
}

ErrorProfile vanilla_adv_error(const FiniteMfg& mfg, const PolicySequence& expert,
                               const PolicySequence& apprentice) {
  return occupancy_profile(ErrorKind::VANILLA_ADV,
                           single_agent_flow(mfg, expert, expert),
                           single_agent_flow(mfg, expert, apprentice));
}

ErrorProfile mfc_adv_error(const FiniteMfg& mfg, const PolicySequence& expert,
                           const PolicySequence& apprentice) {
  return occupancy_profile(ErrorKind::MFC_ADV, population_flow(mfg, expert),
                           population_flow(mfg, apprentice));
}

LipschitzEstimate lipschitz_constants(const FiniteMfg& mfg, int num_probe_pairs,
                                      unsigned long long seed) {
  const int S = mfg.num_states;
  const int A = mfg.num_actions;
  LipschitzEstimate est;

  // Analytic kernel constant per family.
  if (std::holds_alternative<TabularKernel>(mfg.kernel)) {
    est.analytic.l_p = 0.0;
  } else if (const auto* lin = std::get_if<LinearCouplingKernel>(&mfg.kernel)) {
    double max_row_gap = 0.0;
    for (int s = 0; s < S; ++s)
      for (int a = 0; a < A; ++a) {
        const size_t off = (static_cast<size_t>(s) * A + a) * S;
        double gap = 0.0;
        for (int i = 0; i < S; ++i) gap += std::abs(lin->t1[off + i] - lin->t0[off + i]);
        max_row_gap = std::max(max_row_gap, gap);
      }
    double max_coupling = 0.0;
    for (double c : lin->coupling) max_coupling = std::max(max_coupling, std::abs(c));
    est.analytic.l_p = max_row_gap * max_coupling;
  } else {
    est.analytic.l_p = std::get<AttractorKernel>(mfg.kernel).lipschitz_l;
  }

  // Congestion reward: |r(s,a,rho) - r(s,a,rho')| = c |rho(s) - rho'(s)|.
  est.analytic.l_r = std::abs(mfg.reward.congestion_coeff);
  // Linear in rho(s), so the extreme values sit at rho(s) in {0, 1}.
  double r_max = 0.0;
  for (int s = 0; s < S; ++s)
    for (int a = 0; a < A; ++a) {
      const double base = mfg.reward.base_at(s, a, A);
      r_max = std::max(r_max, std::abs(base));
      r_max = std::max(r_max, std::abs(base - mfg.reward.congestion_coeff));
    }
  est.analytic.r_max = r_max;

  // Probe lower bounds.
  std::mt19937_64 rng(seed);
  std::vector<double> row_a(S), row_b(S);
  double lp_emp = 0.0, lr_emp = 0.0, rmax_emp = 0.0;
  for (int k = 0; k < num_probe_pairs; ++k) {
    const std::vector<double> rho_a = random_distribution(S, rng);
    const std::vector<double> rho_b = random_distribution(S, rng);
    const double denom = l1(rho_a, rho_b);
    for (int s = 0; s < S; ++s)
      for (int a = 0; a < A; ++a) {
        kernel_row(mfg, s, a, rho_a.data(), row_a.data());
        kernel_row(mfg, s, a, rho_b.data(), row_b.data());
        const double ra = reward_at(mfg, s, a, rho_a.data());
        const double rb = reward_at(mfg, s, a, rho_b.data());
        rmax_emp = std::max({rmax_emp, std::abs(ra), std::abs(rb)});
        if (denom > 1e-12) {
          lp_emp = std::max(lp_emp, l1(row_a, row_b) / denom);
          lr_emp = std::max(lr_emp, std::abs(ra - rb) / denom);
        }
      }
  }
  est.empirical = {lr_emp, lp_emp, rmax_emp};
  return est;
}

BoundReport theorem_bounds(const LipschitzConstants& consts, int horizon,
                           const std::vector<ErrorProfile>& errors, double nig) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const double H = static_cast<double>(horizon);
  const double lr = consts.l_r;
  const double lp = consts.l_p;
  const double rmax = consts.r_max;

  BoundReport report;
  report.nig = nig;
  for (const ErrorProfile& profile : errors) {
    const double eps = profile.maximum;
    TheoremBound b;
    switch (profile.kind) {
      case ErrorKind::BC:
        if (lp == 0.0) {
          b.label = "thm1_bc_lp0";
          b.bound = H * H * (rmax + 2.0 * lr) * eps;
        } else {
          b.label = "thm3_bc";
          b.bound = (H * H * rmax + 2.0 * std::pow(1.0 + lp, H) * (lr + rmax) / (lp * lp)) * eps;
        }
        break;
      case ErrorKind::ADV:
        if (lp != 0.0)
          throw unsupported_setting(
              "the shared-kernel occupancy bound requires l_p == 0");
        b.label = "thm2_adv_lp0";
        b.bound = (2.0 * lr + rmax) * H * eps;
        break;
      case ErrorKind::VANILLA_ADV:
        if (lp == 0.0)
          throw unsupported_setting(
              "the expert-population occupancy bound requires l_p > 0 "
              "(it divides by l_p); use the shared-kernel bound instead");
        b.label = "thm4_vanilla_adv";
        b.bound = (rmax * H + 2.0 * std::pow(1.0 + lp, H) * (rmax + lr) / lp) * eps;
        break;
      case ErrorKind::MFC_ADV:
        if (lp == 0.0)
          throw unsupported_setting(
              "the self-consistent occupancy bound is stated for l_p > 0; "
              "use the shared-kernel bound instead");
        b.label = "thm5_mfc_adv";
        b.bound = ((2.0 * lr + rmax) * H + 3.0 * lp * rmax * H * H) * eps;
        break;
    }
    b.satisfied = nig <= b.bound + 1e-9;
    report.bounds.push_back(std::move(b));
  }
  return report;
}

PolicySequence bc_fit_from_samples(const TrajectoryBatch& batch, int num_states,
                                   int num_actions, int horizon) {
  if (batch.trajectories.empty())
    throw std::invalid_argument("cannot fit a policy from an empty batch");
  if (num_states < 1 || num_actions < 1 || horizon < 1)
    throw std::invalid_argument("bad policy dimensions");

  std::vector<double> counts(static_cast<size_t>(horizon) * num_states * num_actions,
                             0.0);
  for (const auto& traj : batch.trajectories) {
    if (static_cast<int>(traj.size()) != horizon)
      throw std::invalid_argument("trajectory length does not match horizon");
    for (int n = 0; n < horizon; ++n) {
      const auto [s, a] = traj[n];
      if (s < 0 || s >= num_states || a < 0 || a >= num_actions)
        throw std::invalid_argument("trajectory entry out of range");
      counts[(static_cast<size_t>(n) * num_states + s) * num_actions + a] += 1.0;
    }
  }

  PolicySequence fitted;
  fitted.horizon = horizon;
  fitted.num_states = num_states;
  fitted.num_actions = num_actions;
  fitted.probs.resize(counts.size());
  for (int n = 0; n < horizon; ++n)
    for (int s = 0; s < num_states; ++s) {
      const size_t off = (static_cast<size_t>(n) * num_states + s) * num_actions;
      double total = 0.0;
      for (int a = 0; a < num_actions; ++a) total += counts[off + a];
      for (int a = 0; a < num_actions; ++a)
        fitted.probs[off + a] =
            total > 0.0 ? counts[off + a] / total : 1.0 / num_actions;
    }
  return fitted;
}

ValueDiffCheck value_diff_decomposition_check(const FiniteMfg& mfg,
                                              const PolicySequence& expert,
                                              const PolicySequence& apprentice,
                                              const PolicySequence& probe,
                                              const LipschitzConstants& consts) {
  validate_policy(mfg, expert, "expert");
  validate_policy(mfg, apprentice, "apprentice");
  validate_policy(mfg, probe, "probe");
  if (exploitability(mfg, expert) > 1e-9)
    throw std::invalid_argument(
        "the decomposition assumes the expert is an equilibrium "
        "(exploitability <= 1e-9)");

  const FlowSequence pop_a = population_flow(mfg, apprentice);
  const FlowSequence pop_e = population_flow(mfg, expert);
  const MeanField field_a = pop_a.states();

  ValueDiffCheck check;
  // Signed: the decomposition bounds only the probe's gain over the
  // apprentice; a probe can be arbitrarily worse.
  check.lhs = policy_value(mfg, probe, field_a) -
              policy_value(mfg, apprentice, field_a);

  // pop_e doubles as mu^{(E)E} and pop_a as rho^{(A)A}.
  const FlowSequence flow_ea = single_agent_flow(mfg, expert, apprentice);
  const FlowSequence flow_ap = single_agent_flow(mfg, apprentice, probe);
  const FlowSequence flow_ep = single_agent_flow(mfg, expert, probe);

  double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
  for (int n = 0; n < mfg.horizon; ++n) {
    t1 += state_dist_l1(pop_a, pop_e, n);
    t2 += occupancy_l1(pop_e, flow_ea, n);
    t3 += state_dist_l1(flow_ap, flow_ep, n);
    t4 += state_dist_l1(pop_a, flow_ea, n);
  }
  check.rhs = 2.0 * consts.l_r * t1 + consts.r_max * (t2 + t3 + t4);
  return check;
}

}  // namespace mfgi
