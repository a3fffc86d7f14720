#include "mfgi/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include <json.hpp>

#include "mfgi/adversarial.hpp"
#include "mfgi/flows.hpp"

namespace mfgi {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct AttractorEvaluation {
  SweepRow row;
  ErrorProfile bc, vanilla, mfc;
};

AttractorEvaluation evaluate_attractor_generic(double lipschitz_l, int horizon,
                                               double alpha) {
  const FiniteMfg mfg = build_attractor(lipschitz_l, horizon);
  const PolicySequence expert = alpha_policy(0.0, horizon);
  const PolicySequence policy = alpha_policy(alpha, horizon);

  AttractorEvaluation ev;
  ev.bc = bc_error(mfg, expert, policy);
  ev.vanilla = vanilla_adv_error(mfg, expert, policy);
  ev.mfc = mfc_adv_error(mfg, expert, policy);
  ev.row.alpha = alpha;
  ev.row.lipschitz_l = lipschitz_l;
  ev.row.horizon = horizon;
  ev.row.eps_bc_max = ev.bc.maximum;
  ev.row.eps_vanilla_max = ev.vanilla.maximum;
  ev.row.eps_mfc_max = ev.mfc.maximum;
  ev.row.nig = equilibrium_value_gap(mfg, expert, policy);
  return ev;
}

double row_deviation(const SweepRow& a, const SweepRow& b) {
  return std::max({std::abs(a.eps_bc_max - b.eps_bc_max),
                   std::abs(a.eps_vanilla_max - b.eps_vanilla_max),
                   std::abs(a.eps_mfc_max - b.eps_mfc_max), std::abs(a.nig - b.nig)});
}

json sweep_row_json(const SweepRow& r) {
  return {{"alpha", r.alpha},
          {"L", r.lipschitz_l},
          {"H", r.horizon},
          {"eps_bc_max", r.eps_bc_max},
          {"eps_vanilla_max", r.eps_vanilla_max},
          {"eps_mfc_max", r.eps_mfc_max},
          {"nig", r.nig}};
}

double bound_ratio(double nig, double bound) {
  if (bound > 0.0) return nig / bound;
  return nig <= 1e-9 ? 0.0 : std::numeric_limits<double>::infinity();
}

json bound_row_json(double nig, const BoundReport& report) {
  json bounds = json::array();
  for (const auto& b : report.bounds)
    bounds.push_back({{"theorem", b.label},
                      {"bound", b.bound},
                      {"ratio", bound_ratio(nig, b.bound)},
                      {"satisfied", b.satisfied}});
  return bounds;
}

int count_violations(const BoundReport& report) {
  int v = 0;
  for (const auto& b : report.bounds)
    if (!b.satisfied) ++v;
  return v;
}

}  // namespace

SweepConfig SweepConfig::defaults() {
  SweepConfig c;
  c.alphas = alpha_grid(0.01);
  c.lipschitz_values = {0.01, 0.1, 0.5, 1.0, 2.0};
  c.horizons = {3, 25, 50, 75, 100};
  return c;
}

std::vector<double> alpha_grid(double step) {
  if (step <= 0.0 || step > 1.0) throw std::invalid_argument("bad alpha step");
  const int count = static_cast<int>(std::round(1.0 / step));
  std::vector<double> alphas(count + 1);
  for (int i = 0; i <= count; ++i)
    alphas[i] = std::min(1.0, static_cast<double>(i) / count);
  alphas.back() = 1.0;
  return alphas;
}

SweepRow attractor_row_generic(double lipschitz_l, int horizon, double alpha) {
  return evaluate_attractor_generic(lipschitz_l, horizon, alpha).row;
}

SweepRow attractor_row_closed_form(double lipschitz_l, int horizon, double alpha) {
  const ClosedFormProfile cf = closed_form_profile({lipschitz_l, horizon, alpha});
  SweepRow row;
  row.alpha = alpha;
  row.lipschitz_l = lipschitz_l;
  row.horizon = horizon;
  row.eps_bc_max = *std::max_element(cf.eps_bc.begin(), cf.eps_bc.end());
  row.eps_vanilla_max = *std::max_element(cf.eps_vanilla.begin(), cf.eps_vanilla.end());
  row.eps_mfc_max = *std::max_element(cf.eps_mfc.begin(), cf.eps_mfc.end());
  row.nig = cf.nig;
  return row;
}

SweepResult run_sweep(const SweepConfig& config, double tolerance) {
  if (config.alphas.empty() || config.lipschitz_values.empty() ||
      config.horizons.empty())
    throw std::invalid_argument("sweep grids must be nonempty");

  SweepResult result;
  for (double alpha : config.alphas)
    for (double lipschitz_l : config.lipschitz_values)
      for (int horizon : config.horizons) {
        const SweepRow generic = attractor_row_generic(lipschitz_l, horizon, alpha);
        const SweepRow closed = attractor_row_closed_form(lipschitz_l, horizon, alpha);
        const double dev = row_deviation(generic, closed);
        result.max_deviation = std::max(result.max_deviation, dev);
        if (dev <= tolerance)
          result.rows.push_back(generic);
        else
          result.flagged.push_back({generic, closed, dev});
      }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "alpha,L,H,eps_bc_max,eps_vanilla_max,eps_mfc_max,nig\n";
  for (const SweepRow& r : result.rows)
    out << fmt17(r.alpha) << ',' << fmt17(r.lipschitz_l) << ',' << r.horizon << ','
        << fmt17(r.eps_bc_max) << ',' << fmt17(r.eps_vanilla_max) << ','
        << fmt17(r.eps_mfc_max) << ',' << fmt17(r.nig) << '\n';
}

void write_sweep_json(const SweepResult& result, std::ostream& out) {
  json j;
  j["max_deviation"] = result.max_deviation;
  json rows = json::array();
  for (const SweepRow& r : result.rows) rows.push_back(sweep_row_json(r));
  j["rows"] = std::move(rows);
  json flagged = json::array();
  for (const SweepDisagreement& d : result.flagged)
    flagged.push_back({{"generic", sweep_row_json(d.generic)},
                       {"closed_form", sweep_row_json(d.closed_form)},
                       {"max_abs_deviation", d.max_abs_deviation}});
  j["flagged"] = std::move(flagged);
  out << j.dump(2) << "\n";
}

void write_sweep_file(const SweepResult& result, const std::string& path,
                      OutputFormat format) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write output file: " + path);
  if (format == OutputFormat::Csv)
    write_sweep_csv(result, out);
  else
    write_sweep_json(result, out);
}

BoundsResult run_verify_bounds(const SweepConfig& config,
                               const std::optional<LipschitzConstants>& consts_override,
                               int tabular_trials) {
  BoundsResult out;

  for (double alpha : config.alphas)
    for (double lipschitz_l : config.lipschitz_values)
      for (int horizon : config.horizons) {
        const AttractorEvaluation ev =
            evaluate_attractor_generic(lipschitz_l, horizon, alpha);
        const LipschitzConstants consts =
            consts_override ? *consts_override
                            : LipschitzConstants{0.0, lipschitz_l, 1.0};
        std::vector<ErrorProfile> errors;
        errors.push_back(ev.bc);
        if (consts.l_p > 0.0) {
          errors.push_back(ev.vanilla);
          errors.push_back(ev.mfc);
        }
        BoundCheckRow row;
        row.alpha = alpha;
        row.lipschitz_l = lipschitz_l;
        row.horizon = horizon;
        row.report = theorem_bounds(consts, horizon, errors, ev.row.nig);
        out.violations += count_violations(row.report);
        out.grid_rows.push_back(std::move(row));
      }

  std::mt19937_64 rng(config.seed);
  for (int trial = 0; trial < tabular_trials; ++trial) {
    const int S = 2 + static_cast<int>(rng() % 2);
    const int A = 2 + static_cast<int>(rng() % 2);
    const int H = 2 + static_cast<int>(rng() % 3);
    // Population-independent reward so the computed best response is an
    // equilibrium; the l_p == 0 bounds assume an equilibrium expert.
    const FiniteMfg mfg = random_tabular_game(S, A, H, 0.0, rng);
    MeanField uniform_field;
    uniform_field.horizon = H;
    uniform_field.num_states = S;
    uniform_field.dists.assign(static_cast<size_t>(H) * S, 1.0 / S);
    const PolicySequence expert = best_response(mfg, uniform_field).policy;
    const PolicySequence apprentice = random_policy(H, S, A, rng);

    const LipschitzConstants consts = lipschitz_constants(mfg, 0).analytic;
    const std::vector<ErrorProfile> errors = {bc_error(mfg, expert, apprentice),
                                              adv_error(mfg, expert, apprentice)};
    TabularTrialRow row;
    row.trial = trial;
    row.num_states = S;
    row.num_actions = A;
    row.horizon = H;
    row.report =
        theorem_bounds(consts, H, errors, exploitability(mfg, apprentice));
    out.violations += count_violations(row.report);
    out.tabular_rows.push_back(std::move(row));
  }
  return out;
}

void write_bounds_json(const BoundsResult& result, std::ostream& out) {
  json j;
  j["violations"] = result.violations;
  json grid = json::array();
  for (const auto& row : result.grid_rows)
    grid.push_back({{"alpha", row.alpha},
                    {"L", row.lipschitz_l},
                    {"H", row.horizon},
                    {"nig", row.report.nig},
                    {"bounds", bound_row_json(row.report.nig, row.report)}});
  j["attractor_grid"] = std::move(grid);
  json tab = json::array();
  for (const auto& row : result.tabular_rows)
    tab.push_back({{"trial", row.trial},
                   {"num_states", row.num_states},
                   {"num_actions", row.num_actions},
                   {"horizon", row.horizon},
                   {"nig", row.report.nig},
                   {"bounds", bound_row_json(row.report.nig, row.report)}});
  j["tabular_lp0"] = std::move(tab);
  out << j.dump(2) << "\n";
}

void write_bounds_csv(const BoundsResult& result, std::ostream& grid_out,
                      std::ostream& tabular_out) {
  grid_out << "alpha,L,H,nig,theorem,bound,ratio,satisfied\n";
  for (const auto& row : result.grid_rows)
    for (const auto& b : row.report.bounds)
      grid_out << fmt17(row.alpha) << ',' << fmt17(row.lipschitz_l) << ','
               << row.horizon << ',' << fmt17(row.report.nig) << ',' << b.label << ','
               << fmt17(b.bound) << ',' << fmt17(bound_ratio(row.report.nig, b.bound))
               << ',' << (b.satisfied ? 1 : 0) << '\n';
  tabular_out << "trial,num_states,num_actions,horizon,nig,theorem,bound,ratio,"
                 "satisfied\n";
  for (const auto& row : result.tabular_rows)
    for (const auto& b : row.report.bounds)
      tabular_out << row.trial << ',' << row.num_states << ',' << row.num_actions
                  << ',' << row.horizon << ',' << fmt17(row.report.nig) << ','
                  << b.label << ',' << fmt17(b.bound) << ','
                  << fmt17(bound_ratio(row.report.nig, b.bound)) << ','
                  << (b.satisfied ? 1 : 0) << '\n';
}

void write_bounds_file(const BoundsResult& result, const std::string& path,
                       OutputFormat format) {
  if (format == OutputFormat::Json) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write output file: " + path);
    write_bounds_json(result, out);
    return;
  }
  const size_t dot = path.find_last_of('.');
  const std::string tabular_path = dot == std::string::npos
                                       ? path + ".tabular"
                                       : path.substr(0, dot) + ".tabular" + path.substr(dot);
  std::ofstream grid_out(path);
  std::ofstream tabular_out(tabular_path);
  if (!grid_out || !tabular_out)
    throw std::invalid_argument("cannot write output file: " + path);
  write_bounds_csv(result, grid_out, tabular_out);
}

double nig_at_epsilon(const std::vector<CurvePoint>& curve, double eps) {
  if (curve.empty()) throw std::invalid_argument("empty curve");
  if (eps <= curve.front().eps) return curve.front().nig;
  for (size_t k = 0; k + 1 < curve.size(); ++k) {
    const double e0 = curve[k].eps;
    const double e1 = curve[k + 1].eps;
    if (eps <= e1) {
      if (e1 == e0) return curve[k].nig;
      const double t = (eps - e0) / (e1 - e0);
      return curve[k].nig + t * (curve[k + 1].nig - curve[k].nig);
    }
  }
  return curve.back().nig;
}

std::vector<OrderingViolation> check_proxy_ordering(const std::vector<SweepRow>& rows,
                                                    int probes_per_cell, double tol) {
  std::map<std::pair<double, int>, std::vector<SweepRow>> cells;
  for (const SweepRow& r : rows) cells[{r.lipschitz_l, r.horizon}].push_back(r);

  std::vector<OrderingViolation> violations;
  for (auto& [key, cell] : cells) {
    std::stable_sort(cell.begin(), cell.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.alpha < b.alpha; });
    std::vector<CurvePoint> bc, vanilla, mfc;
    double ebc = 0.0, evan = 0.0, emfc = 0.0;
    for (const SweepRow& r : cell) {
      // Enforce the (mathematically expected) monotonicity of the error
      // level in alpha against roundoff wobble.
      ebc = std::max(ebc, r.eps_bc_max);
      evan = std::max(evan, r.eps_vanilla_max);
      emfc = std::max(emfc, r.eps_mfc_max);
      bc.push_back({ebc, r.nig});
      vanilla.push_back({evan, r.nig});
      mfc.push_back({emfc, r.nig});
    }
    const double lo =
        std::max({bc.front().eps, vanilla.front().eps, mfc.front().eps});
    double hi = std::min({bc.back().eps, vanilla.back().eps, mfc.back().eps});
    // Near saturation the error level stalls within one ulp of its limit
    // while the gap still grows, so inverting the curve there amplifies
    // roundoff into order-one gap noise. Stay a hair below the top.
    hi -= 1e-9 * (1.0 + std::abs(hi));
    if (hi <= lo) continue;
    for (int k = 0; k < probes_per_cell; ++k) {
      const double eps = lo + (hi - lo) * k / (probes_per_cell - 1);
      const double nig_bc = nig_at_epsilon(bc, eps);
      const double nig_vanilla = nig_at_epsilon(vanilla, eps);
      const double nig_mfc = nig_at_epsilon(mfc, eps);
      if (nig_mfc > nig_vanilla + tol || nig_vanilla > nig_bc + tol)
        violations.push_back(
            {key.first, key.second, eps, nig_bc, nig_vanilla, nig_mfc});
    }
  }
  return violations;
}

double max_vanilla_mfc_gap(const std::vector<SweepRow>& rows, double lipschitz_l,
                           int horizon) {
  double gap = 0.0;
  for (const SweepRow& r : rows)
    if (r.lipschitz_l == lipschitz_l && r.horizon == horizon)
      gap = std::max(gap, std::abs(r.eps_vanilla_max - r.eps_mfc_max));
  return gap;
}

FiniteMfg random_tabular_game(int num_states, int num_actions, int horizon,
                              double congestion_coeff, std::mt19937_64& rng) {
  auto random_dist = [&](double* out, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      out[i] = -std::log(1.0 - next_uniform(rng));
      sum += out[i];
    }
    double acc = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      out[i] /= sum;
      acc += out[i];
    }
    out[n - 1] = 1.0 - acc;  // rows sum to 1 exactly
  };

  FiniteMfg mfg;
  mfg.num_states = num_states;
  mfg.num_actions = num_actions;
  mfg.horizon = horizon;
  mfg.initial_distribution.resize(num_states);
  random_dist(mfg.initial_distribution.data(), num_states);

  TabularKernel kernel;
  kernel.transitions.resize(static_cast<size_t>(num_states) * num_actions * num_states);
  for (int s = 0; s < num_states; ++s)
    for (int a = 0; a < num_actions; ++a)
      random_dist(kernel.transitions.data() +
                      (static_cast<size_t>(s) * num_actions + a) * num_states,
                  num_states);
  mfg.kernel = std::move(kernel);

  mfg.reward.base.resize(static_cast<size_t>(num_states) * num_actions);
  for (auto& r : mfg.reward.base) r = 2.0 * next_uniform(rng) - 1.0;
  mfg.reward.congestion_coeff = congestion_coeff;
  mfg.validate();
  return mfg;
}

PolicySequence random_policy(int horizon, int num_states, int num_actions,
                             std::mt19937_64& rng) {
  PolicySequence pi;
  pi.horizon = horizon;
  pi.num_states = num_states;
  pi.num_actions = num_actions;
  pi.probs.resize(static_cast<size_t>(horizon) * num_states * num_actions);
  for (int n = 0; n < horizon; ++n)
    for (int s = 0; s < num_states; ++s) {
      double sum = 0.0;
      for (int a = 0; a < num_actions; ++a) {
        pi.at(n, s, a) = -std::log(1.0 - next_uniform(rng));
        sum += pi.at(n, s, a);
      }
      double acc = 0.0;
      for (int a = 0; a < num_actions - 1; ++a) {
        pi.at(n, s, a) /= sum;
        acc += pi.at(n, s, a);
      }
      pi.at(n, s, num_actions - 1) = 1.0 - acc;
    }
  return pi;
}

double enumerate_best_value(const FiniteMfg& mfg, const MeanField& mean_field) {
  validate_mean_field(mfg, mean_field);
  const int S = mfg.num_states;
  const int A = mfg.num_actions;
  const int cells = mfg.horizon * S;

  double family_size = 1.0;
  for (int i = 0; i < cells; ++i) {
    family_size *= A;
    if (family_size > 2e6)
      throw std::invalid_argument("deterministic policy space too large to enumerate");
  }
  const long long total = static_cast<long long>(family_size);

  std::vector<int> actions(cells);
  std::vector<double> cur(S), next(S), row(S);
  double best = -std::numeric_limits<double>::infinity();
  for (long long code = 0; code < total; ++code) {
    long long rest = code;
    for (int i = 0; i < cells; ++i) {
      actions[i] = static_cast<int>(rest % A);
      rest /= A;
    }
    for (int s = 0; s < S; ++s) cur[s] = mfg.initial_distribution[s];
    double value = 0.0;
    for (int n = 0; n < mfg.horizon; ++n) {
      const double* rho = mean_field.row(n);
      std::fill(next.begin(), next.end(), 0.0);
      for (int s = 0; s < S; ++s) {
        if (cur[s] == 0.0) continue;
        const int a = actions[n * S + s];
        value += cur[s] * reward_at(mfg, s, a, rho);
        if (n + 1 < mfg.horizon) {
          kernel_row(mfg, s, a, rho, row.data());
          for (int next_s = 0; next_s < S; ++next_s) next[next_s] += cur[s] * row[next_s];
        }
      }
      std::swap(cur, next);
    }
    best = std::max(best, value);
  }
  return best;
}

std::vector<SuiteResult> run_selfcheck(const AttractorBuilder& builder,
                                       unsigned long long seed) {
  const AttractorBuilder build = builder ? builder : AttractorBuilder(build_attractor);
  std::vector<SuiteResult> results;

  auto run_suite = [&results](SuiteResult suite, auto&& body) {
    try {
      body(suite);
    } catch (const std::exception& e) {
      suite.passed = false;
      suite.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(suite));
  };

  // Grid equivalence: direct recursion vs generic pipeline, per field.
  run_suite(SuiteResult{"grid-equivalence", false, 0.0, ""}, [&](SuiteResult& suite) {
    const std::vector<double> lipschitz_values = {0.01, 0.1, 0.5, 1.0, 2.0};
    const std::vector<int> horizons = {3, 25, 50, 75, 100};
    for (int ai = 0; ai <= 20; ++ai) {
      const double alpha = static_cast<double>(ai) / 20.0;
      for (double lipschitz_l : lipschitz_values)
        for (int horizon : horizons) {
          const ClosedFormProfile cf =
              closed_form_profile({lipschitz_l, horizon, alpha});
          const FiniteMfg mfg = build(lipschitz_l, horizon);
          const PolicySequence expert = alpha_policy(0.0, horizon);
          const PolicySequence policy = alpha_policy(alpha, horizon);

          const FlowSequence pop = population_flow(mfg, policy);
          const FlowSequence agent = single_agent_flow(mfg, expert, policy);
          const ErrorProfile bc = bc_error(mfg, expert, policy);
          const ErrorProfile vanilla = vanilla_adv_error(mfg, expert, policy);
          const ErrorProfile mfc = mfc_adv_error(mfg, expert, policy);
          const double nig = equilibrium_value_gap(mfg, expert, policy);

          double dev = std::abs(nig - cf.nig);
          for (int n = 0; n < horizon; ++n)
            dev = std::max({dev, std::abs(pop.rho(n, 1) - cf.rho_pop_s1[n]),
                            std::abs(agent.rho(n, 1) - cf.rho_expertpop_s1[n]),
                            std::abs(bc.per_step[n] - cf.eps_bc[n]),
                            std::abs(vanilla.per_step[n] - cf.eps_vanilla[n]),
                            std::abs(mfc.per_step[n] - cf.eps_mfc[n])});
          suite.max_deviation = std::max(suite.max_deviation, dev);
        }
    }
    suite.passed = suite.max_deviation <= 1e-10;
    suite.detail = "max per-field deviation " + fmt17(suite.max_deviation);
  });

  // Witness identity on random occupancy pairs.
  run_suite(SuiteResult{"ipm-identity", false, 0.0, ""}, [&](SuiteResult& suite) {
    std::mt19937_64 rng(seed + 1);
    for (int trial = 0; trial < 200; ++trial) {
      const int S = 2 + static_cast<int>(rng() % 2);
      const int A = 2 + static_cast<int>(rng() % 2);
      const int H = 2 + static_cast<int>(rng() % 4);
      const FiniteMfg mfg = random_tabular_game(S, A, H, 0.0, rng);
      const FlowSequence a = population_flow(mfg, random_policy(H, S, A, rng));
      const FlowSequence b = population_flow(mfg, random_policy(H, S, A, rng));
      const IpmResult ipm = ipm_witness(a, b);
      suite.max_deviation = std::max(suite.max_deviation, ipm.gap_check);
    }
    suite.passed = suite.max_deviation <= 1e-12;
    suite.detail = "max witness gap " + fmt17(suite.max_deviation);
  });

  // Backward induction against exhaustive enumeration.
  run_suite(SuiteResult{"best-response", false, 0.0, ""}, [&](SuiteResult& suite) {
    std::mt19937_64 rng(seed + 2);
    for (int trial = 0; trial < 25; ++trial) {
      const int S = 2 + static_cast<int>(rng() % 2);
      const int A = 2 + static_cast<int>(rng() % 2);
      const int H = 2 + static_cast<int>(rng() % 3);
      const FiniteMfg mfg = random_tabular_game(S, A, H, 0.0, rng);
      const MeanField field = population_flow(mfg, random_policy(H, S, A, rng)).states();
      const double dp = best_response(mfg, field).value;
      const double brute = enumerate_best_value(mfg, field);
      suite.max_deviation = std::max(suite.max_deviation, std::abs(dp - brute));
    }
    suite.passed = suite.max_deviation <= 1e-12;
    suite.detail = "max |dp - enumeration| " + fmt17(suite.max_deviation);
  });

  // Value-difference decomposition on attractor instances.
  run_suite(SuiteResult{"value-decomposition", false, 0.0, ""}, [&](SuiteResult& suite) {
    std::mt19937_64 rng(seed + 3);
    const std::vector<double> lipschitz_values = {0.01, 0.1, 0.5, 1.0, 2.0};
    const std::vector<int> horizons = {3, 25, 50};
    double worst_margin = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
      const double lipschitz_l = lipschitz_values[rng() % lipschitz_values.size()];
      const int horizon = horizons[rng() % horizons.size()];
      const FiniteMfg mfg = build(lipschitz_l, horizon);
      const PolicySequence expert = alpha_policy(0.0, horizon);
      const PolicySequence apprentice = random_policy(horizon, 2, 2, rng);
      const PolicySequence probe = random_policy(horizon, 2, 2, rng);
      const ValueDiffCheck check = value_diff_decomposition_check(
          mfg, expert, apprentice, probe, {0.0, lipschitz_l, 1.0});
      worst_margin = std::max(worst_margin, check.lhs - check.rhs);
    }
    suite.max_deviation = worst_margin;
    suite.passed = worst_margin <= 1e-9;
    suite.detail = "max lhs - rhs " + fmt17(worst_margin);
  });

  return results;
}

}  // namespace mfgi
