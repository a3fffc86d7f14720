#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mfgi/attractor.hpp"
#include "mfgi/imitation.hpp"

namespace mfgi {

enum class OutputFormat { Csv, Json };

/// Grid over the attractor benchmark. Defaults reproduce the study grids:
/// alpha in {0, 0.01, ..., 1}, L in {0.01, 0.1, 0.5, 1, 2},
/// H in {3, 25, 50, 75, 100}.
struct SweepConfig {
  std::vector<double> alphas;
  std::vector<double> lipschitz_values;
  std::vector<int> horizons;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  unsigned long long seed = 0;

  static SweepConfig defaults();
};

std::vector<double> alpha_grid(double step);

struct SweepRow {
  double alpha = 0.0;
  double lipschitz_l = 0.0;
  int horizon = 0;
  double eps_bc_max = 0.0;
  double eps_vanilla_max = 0.0;
  double eps_mfc_max = 0.0;
  double nig = 0.0;
};

/// A grid point where the direct-recursion profile and the generic pipeline
/// disagreed beyond tolerance.
struct SweepDisagreement {
  SweepRow generic;
  SweepRow closed_form;
  double max_abs_deviation = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // generic-pipeline values, alpha-major then L then H
  std::vector<SweepDisagreement> flagged;
  double max_deviation = 0.0;  // over all emitted and flagged rows and all fields
};

/// One grid cell evaluated through the generic machinery: the error maxima of
/// the three proxies and the equilibrium value gap (which the direct
/// recursion predicts as sum_n rho_n(s1)).
SweepRow attractor_row_generic(double lipschitz_l, int horizon, double alpha);

SweepRow attractor_row_closed_form(double lipschitz_l, int horizon, double alpha);

/// Every row computed both ways; rows agreeing within `tolerance` on all four
/// derived fields are emitted, the rest are flagged.
SweepResult run_sweep(const SweepConfig& config, double tolerance = 1e-10);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_sweep_json(const SweepResult& result, std::ostream& out);
void write_sweep_file(const SweepResult& result, const std::string& path,
                      OutputFormat format);

// ---------------------------------------------------------------------------
// Bound verification
// ---------------------------------------------------------------------------

struct BoundCheckRow {
  double alpha = 0.0;
  double lipschitz_l = 0.0;
  int horizon = 0;
  BoundReport report;  // one entry per applicable theorem, with tightness data
};

struct TabularTrialRow {
  int trial = 0;
  int num_states = 0, num_actions = 0, horizon = 0;
  BoundReport report;
};

struct BoundsResult {
  std::vector<BoundCheckRow> grid_rows;
  std::vector<TabularTrialRow> tabular_rows;
  int violations = 0;
};

/// Phase one: the attractor grid with auto-derived constants
/// (l_r = 0, r_max = 1, l_p = L) unless `consts_override` is given; evaluates
/// every applicable bound against the grid row's gap. Phase two:
/// `tabular_trials` random population-independent games whose expert is a
/// computed best response (hence an equilibrium), checked against the
/// l_p == 0 bounds with the exploitability of a random apprentice.
BoundsResult run_verify_bounds(const SweepConfig& config,
                               const std::optional<LipschitzConstants>& consts_override,
                               int tabular_trials);

void write_bounds_json(const BoundsResult& result, std::ostream& out);
void write_bounds_csv(const BoundsResult& result, std::ostream& grid_out,
                      std::ostream& tabular_out);
void write_bounds_file(const BoundsResult& result, const std::string& path,
                       OutputFormat format);

// ---------------------------------------------------------------------------
// Curve comparison (gap as a function of achieved error level)
// ---------------------------------------------------------------------------

struct CurvePoint {
  double eps = 0.0;
  double nig = 0.0;
};

/// Linear interpolation of the gap along a curve of (error, gap) points with
/// nondecreasing error; flat stretches resolve to their first point.
double nig_at_epsilon(const std::vector<CurvePoint>& curve, double eps);

struct OrderingViolation {
  double lipschitz_l = 0.0;
  int horizon = 0;
  double eps = 0.0;
  double nig_bc = 0.0, nig_vanilla = 0.0, nig_mfc = 0.0;
};

/// For each (L, H) cell, probes error levels common to the three proxies and
/// checks nig_mfc <= nig_vanilla <= nig_bc at each level.
std::vector<OrderingViolation> check_proxy_ordering(const std::vector<SweepRow>& rows,
                                                    int probes_per_cell = 41,
                                                    double tol = 1e-9);

/// max over the cell's alpha grid of |eps_vanilla_max - eps_mfc_max|.
double max_vanilla_mfc_gap(const std::vector<SweepRow>& rows, double lipschitz_l,
                           int horizon);

// ---------------------------------------------------------------------------
// Self-check suites
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  std::string detail;
};

using AttractorBuilder = std::function<FiniteMfg(double lipschitz_l, int horizon)>;

/// Grid equivalence, the witness identity battery, best-response brute-force
/// comparison, and the value-difference decomposition sweep. The builder
/// override exists so a deliberately broken game can be injected as a
/// negative control.
std::vector<SuiteResult> run_selfcheck(const AttractorBuilder& builder = {},
                                       unsigned long long seed = 0);

// ---------------------------------------------------------------------------
// Random instances (used by the self-check and the bound trials)
// ---------------------------------------------------------------------------

FiniteMfg random_tabular_game(int num_states, int num_actions, int horizon,
                              double congestion_coeff, std::mt19937_64& rng);

PolicySequence random_policy(int horizon, int num_states, int num_actions,
                             std::mt19937_64& rng);

/// Brute-force best-response value: maximum over all |A|^(H*|S|) deterministic
/// policies, each evaluated by the forward flow recursion. Independent of the
/// backward-induction path.
double enumerate_best_value(const FiniteMfg& mfg, const MeanField& mean_field);

}  // namespace mfgi
