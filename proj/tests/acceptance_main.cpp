// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mfgi/adversarial.hpp"
#include "mfgi/attractor.hpp"
#include "mfgi/experiment.hpp"
#include "mfgi/flows.hpp"
#include "mfgi/imitation.hpp"
#include "mfgi/sampling.hpp"

using namespace mfgi;

namespace {

struct Criterion {
  std::string name;
  std::function<std::string()> run;  // empty string = pass, else failure detail
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double vanilla_objective(const FiniteMfg& mfg, const PolicySequence& expert,
                         const PolicySequence& candidate) {
  const FlowSequence e = single_agent_flow(mfg, expert, expert);
  const FlowSequence c = single_agent_flow(mfg, expert, candidate);
  double d = 0.0;
  for (int n = 0; n < mfg.horizon; ++n) d += occupancy_l1(e, c, n);
  return d;
}

}  // namespace

int main() {
  SweepResult sweep;  // shared by criteria 1, 2 and 4

  std::vector<Criterion> criteria;

  criteria.push_back({"1. grid reproduction (closed form vs pipeline, < 10 s)", [&] {
    const auto start = std::chrono::steady_clock::now();
    sweep = run_sweep(SweepConfig::defaults());
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sweep.rows.size() != 2525)
      return "expected 2525 rows, got " + std::to_string(sweep.rows.size());
    if (!sweep.flagged.empty())
      return std::to_string(sweep.flagged.size()) + " rows beyond 1e-10 (max dev " +
             fmt(sweep.max_deviation) + ")";
    if (seconds >= 10.0) return "sweep took " + fmt(seconds) + " s";
    return std::string();
  }});

  criteria.push_back({"2. known values: nig(0)=0, nig(1)=H-1, eps_bc=2*alpha", [&] {
    for (const SweepRow& row : sweep.rows) {
      if (row.alpha == 0.0 && std::abs(row.nig) > 1e-12)
        return "nig(alpha=0) = " + fmt(row.nig);
      if (row.alpha == 1.0 && std::abs(row.nig - (row.horizon - 1.0)) > 1e-12)
        return "nig(alpha=1) off by " + fmt(row.nig - (row.horizon - 1.0));
      if (std::abs(row.eps_bc_max - 2.0 * row.alpha) > 1e-12)
        return "eps_bc != 2 alpha at alpha=" + fmt(row.alpha);
    }
    return std::string();
  }});

  criteria.push_back({"3. bound dominance (grid + 100 tabular games)", [&] {
    SweepConfig config = SweepConfig::defaults();
    config.seed = 20240801;
    const BoundsResult bounds = run_verify_bounds(config, std::nullopt, 100);
    if (bounds.violations != 0)
      return std::to_string(bounds.violations) + " violated bounds";
    if (bounds.tabular_rows.size() != 100) return std::string("missing tabular trials");
    return std::string();
  }});

  criteria.push_back({"4. proxy ordering mfc <= vanilla <= bc, small-L degeneration", [&] {
    const auto violations = check_proxy_ordering(sweep.rows, 101);
    if (!violations.empty())
      return "ordering violated in " + std::to_string(violations.size()) + " probes";
    const double gap = max_vanilla_mfc_gap(sweep.rows, 0.01, 3);
    if (gap > 0.05) return "vanilla/mfc gap " + fmt(gap) + " at (L,H)=(0.01,3)";
    return std::string();
  }});

  criteria.push_back({"5. best-response exactness on 100 random games", [&] {
    std::mt19937_64 rng(5150);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int S = 2 + static_cast<int>(rng() % 2);
      const int A = 2 + static_cast<int>(rng() % 2);
      const int H = 2 + static_cast<int>(rng() % 3);
      const FiniteMfg mfg = random_tabular_game(S, A, H, 0.3, rng);
      const MeanField field =
          population_flow(mfg, random_policy(H, S, A, rng)).states();
      worst = std::max(worst, std::abs(best_response(mfg, field).value -
                                       enumerate_best_value(mfg, field)));
    }
    if (worst > 1e-12) return "max |dp - enumeration| = " + fmt(worst);
    for (int horizon : {3, 25, 50, 75, 100})
      for (double lipschitz_l : {0.01, 0.1, 0.5, 1.0, 2.0}) {
        const double e = exploitability(build_attractor(lipschitz_l, horizon),
                                        alpha_policy(0.0, horizon));
        if (std::abs(e) > 1e-12) return "expert exploitability " + fmt(e);
      }
    return std::string();
  }});

  criteria.push_back({"6. witness identity on 200 occupancy pairs", [&] {
    std::mt19937_64 rng(600);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const int S = 2 + static_cast<int>(rng() % 2);
      const int A = 2 + static_cast<int>(rng() % 2);
      const int H = 2 + static_cast<int>(rng() % 4);
      const FiniteMfg mfg = random_tabular_game(S, A, H, 0.0, rng);
      const IpmResult ipm =
          ipm_witness(population_flow(mfg, random_policy(H, S, A, rng)),
                      population_flow(mfg, random_policy(H, S, A, rng)));
      worst = std::max(worst, ipm.gap_check);
    }
    if (worst > 1e-12) return "max witness gap = " + fmt(worst);
    return std::string();
  }});

  criteria.push_back({"7. value-difference decomposition on 100 random pairs", [&] {
    std::mt19937_64 rng(700);
    const std::vector<double> lipschitz_values = {0.01, 0.1, 0.5, 1.0, 2.0};
    const std::vector<int> horizons = {3, 25, 50};
    for (int trial = 0; trial < 100; ++trial) {
      const double lipschitz_l = lipschitz_values[rng() % lipschitz_values.size()];
      const int horizon = horizons[rng() % horizons.size()];
      const FiniteMfg mfg = build_attractor(lipschitz_l, horizon);
      const ValueDiffCheck check = value_diff_decomposition_check(
          mfg, alpha_policy(0.0, horizon), random_policy(horizon, 2, 2, rng),
          random_policy(horizon, 2, 2, rng), {0.0, lipschitz_l, 1.0});
      if (check.lhs > check.rhs + 1e-9)
        return "lhs - rhs = " + fmt(check.lhs - check.rhs);
    }
    return std::string();
  }});

  criteria.push_back({"8. sampling and cloning estimators at alpha=0.5", [&] {
    const FiniteMfg mfg = build_attractor(1.0, 3);
    const TrajectoryBatch batch =
        sample_trajectories(mfg, alpha_policy(0.5, 3), 100000, 8080);
    int in_s1 = 0;
    for (const auto& traj : batch.trajectories) in_s1 += traj[1].first == 1;
    const double rho1 = in_s1 / 100000.0;
    if (std::abs(rho1 - 0.5) > 0.01) return "rho_1(s1) estimate " + fmt(rho1);
    const PolicySequence fitted = bc_fit_from_samples(batch, 2, 2, 3);
    const double alpha_hat = fitted.at(0, 0, 1);
    if (std::abs(alpha_hat - 0.5) > 0.01) return "alpha estimate " + fmt(alpha_hat);
    return std::string();
  }});

  criteria.push_back({"9. min-max solvers: enumerating and alternating modes", [&] {
    const FiniteMfg attractor = build_attractor(2.0, 25);
    const MinMaxTrace mfc = solve_mfc_adversarial(
        attractor, alpha_policy(0.0, 25), alpha_grid_family(25, 0.01));
    if (mfc.final_objective != 0.0)
      return "mfc objective " + fmt(mfc.final_objective);
    double best = std::numeric_limits<double>::infinity();
    double best_alpha = -1.0;
    for (const auto& it : mfc.iterations)
      if (it.objective < best) {
        best = it.objective;
        best_alpha = it.policy_params[0];
      }
    if (best_alpha != 0.0) return "mfc argmin alpha " + fmt(best_alpha);

    std::mt19937_64 rng(4242);
    const FiniteMfg game = random_tabular_game(2, 2, 2, 0.0, rng);
    MeanField uniform_field;
    uniform_field.horizon = 2;
    uniform_field.num_states = 2;
    uniform_field.dists.assign(4, 0.5);
    const PolicySequence expert = best_response(game, uniform_field).policy;
    double grid_min = std::numeric_limits<double>::infinity();
    for (int i0 = 0; i0 <= 4; ++i0)
      for (int i1 = 0; i1 <= 4; ++i1)
        for (int i2 = 0; i2 <= 4; ++i2)
          for (int i3 = 0; i3 <= 4; ++i3) {
            PolicySequence pi;
            pi.horizon = 2;
            pi.num_states = 2;
            pi.num_actions = 2;
            const double p[4] = {i0 / 4.0, i1 / 4.0, i2 / 4.0, i3 / 4.0};
            pi.probs = {1 - p[0], p[0], 1 - p[1], p[1],
                        1 - p[2], p[2], 1 - p[3], p[3]};
            grid_min = std::min(grid_min, vanilla_objective(game, expert, pi));
          }
    const MinMaxTrace vanilla = solve_vanilla_adversarial(game, expert, {});
    if (std::abs(vanilla.final_objective - grid_min) > 1e-6)
      return "vanilla objective " + fmt(vanilla.final_objective) + " vs grid " +
             fmt(grid_min);
    return std::string();
  }});

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    try {
      detail = criterion.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::printf("[PASS] %s\n", criterion.name.c_str());
    } else {
      std::printf("[FAIL] %s: %s\n", criterion.name.c_str(), detail.c_str());
      ++failures;
    }
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
