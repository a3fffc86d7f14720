#pragma once

#include <string>
#include <vector>

#include "mfgi/mfg.hpp"

namespace mfgi {

enum class ErrorKind { BC, ADV, VANILLA_ADV, MFC_ADV };

const char* error_kind_name(ErrorKind kind);

/// Per-step imitation error of one proxy, plus its maximum over steps.
struct ErrorProfile {
  ErrorKind kind = ErrorKind::BC;
  std::vector<double> per_step;
  double maximum = 0.0;
};

/// eps_n = E_{s ~ rho_n^E} || pi_n^A(.|s) - pi_n^E(.|s) ||_1, the policy
/// distance weighted by the expert's state visitation.
ErrorProfile bc_error(const FiniteMfg& mfg, const PolicySequence& expert,
                      const PolicySequence& apprentice);

/// eps_n = || mu_n^E - mu_n^A ||_1 with both occupancies induced by the one
/// shared kernel. Only defined for population-independent (tabular) kernels;
/// anything else throws unsupported_setting.
ErrorProfile adv_error(const FiniteMfg& mfg, const PolicySequence& expert,
                       const PolicySequence& apprentice);

/// eps_n = || mu_n^{(E)A} - mu_n^{(E)E} ||_1: occupancies of both policies
/// with the population frozen to the expert's.
ErrorProfile vanilla_adv_error(const FiniteMfg& mfg, const PolicySequence& expert,
                               const PolicySequence& apprentice);

/// eps_n = || mu_n^{(A)A} - mu_n^{(E)E} ||_1: each policy's self-consistent
/// population occupancy.
ErrorProfile mfc_adv_error(const FiniteMfg& mfg, const PolicySequence& expert,
                           const PolicySequence& apprentice);

// ---------------------------------------------------------------------------
// Regularity constants and performance bounds
// ---------------------------------------------------------------------------

struct LipschitzConstants {
  double l_r = 0.0;    // reward sensitivity to the population, >= 0
  double l_p = 0.0;    // kernel sensitivity to the population, >= 0
  double r_max = 1.0;  // uniform reward bound, > 0
};

/// Analytic constants for the game's kernel/reward family, together with
/// probe-based empirical lower bounds (ratio maximization over random
/// distribution pairs). The analytic values are the ones fed to the bounds.
struct LipschitzEstimate {
  LipschitzConstants analytic;
  LipschitzConstants empirical;
};

LipschitzEstimate lipschitz_constants(const FiniteMfg& mfg, int num_probe_pairs = 10000,
                                      unsigned long long seed = 0);

struct TheoremBound {
  std::string label;       // e.g. "thm5_mfc_adv"
  double bound = 0.0;      // right-hand side evaluated at the profile maximum
  bool satisfied = false;  // nig <= bound + 1e-9
};

struct BoundReport {
  double nig = 0.0;
  std::vector<TheoremBound> bounds;
};

/// Evaluates the performance-bound right-hand sides applicable to the given
/// error profiles in the game's regime:
///   l_p == 0:  BC  -> H^2 (r_max + 2 l_r) eps          ("thm1_bc_lp0")
///              ADV -> (2 l_r + r_max) H eps            ("thm2_adv_lp0")
///   l_p  > 0:  BC  -> (H^2 r_max + 2 (1+l_p)^H (l_r + r_max) / l_p^2) eps
///                                                      ("thm3_bc")
///              VANILLA_ADV -> (r_max H + 2 (1+l_p)^H (r_max + l_r) / l_p) eps
///                                                      ("thm4_vanilla_adv")
///              MFC_ADV -> ((2 l_r + r_max) H + 3 l_p r_max H^2) eps
///                                                      ("thm5_mfc_adv")
/// A profile whose bound is undefined in the game's regime (ADV with l_p > 0,
/// or the three l_p > 0 forms at l_p == 0) throws unsupported_setting.
BoundReport theorem_bounds(const LipschitzConstants& consts, int horizon,
                           const std::vector<ErrorProfile>& errors, double nig);

// ---------------------------------------------------------------------------
// Sample-based estimation
// ---------------------------------------------------------------------------

/// Per-(n,s) empirical action frequencies of the batch; (n,s) pairs that are
/// never visited get a uniform row.
PolicySequence bc_fit_from_samples(const TrajectoryBatch& batch, int num_states,
                                   int num_actions, int horizon);

// ---------------------------------------------------------------------------
// Value-difference decomposition
// ---------------------------------------------------------------------------

struct ValueDiffCheck {
  double lhs = 0.0;  // V(probe, rho^A) - V(apprentice, rho^A)
  double rhs = 0.0;  // 2 l_r T1 + r_max (T2 + T3 + T4)
};

/// Both sides of the value-difference decomposition
///   V(pi', rho^A) - V(pi^A, rho^A)
///     <= 2 l_r sum_n ||rho_n^A - rho_n^E||_1
///        + r_max ( sum_n ||mu_n^{(E)E} - mu_n^{(E)A}||_1
///                + sum_n ||rho_n^{(A)pi'} - rho_n^{(E)pi'}||_1
///                + sum_n ||rho_n^{(A)A} - rho_n^{(E)A}||_1 ).
/// The left side is signed: only the probe's gain over the apprentice is
/// bounded (a probe may be arbitrarily worse). Requires the expert to be an
/// equilibrium (exploitability <= 1e-9), else throws std::invalid_argument.
ValueDiffCheck value_diff_decomposition_check(const FiniteMfg& mfg,
                                              const PolicySequence& expert,
                                              const PolicySequence& apprentice,
                                              const PolicySequence& probe,
                                              const LipschitzConstants& consts);

}  // namespace mfgi
