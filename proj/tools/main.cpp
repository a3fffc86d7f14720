#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfgi/adversarial.hpp"
#include "mfgi/experiment.hpp"
#include "mfgi/flows.hpp"
#include "mfgi/game_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitVerificationFailure = 2;

std::string default_output_path(const std::string& name) {
  const char* dir = std::getenv("MFGI_OUT_DIR");
  if (dir && *dir) return std::string(dir) + "/" + name;
  return name;
}

mfgi::OutputFormat parse_format(const std::string& format) {
  if (format == "csv") return mfgi::OutputFormat::Csv;
  if (format == "json") return mfgi::OutputFormat::Json;
  throw std::invalid_argument("unknown format: " + format);
}

int run_sweep_command(mfgi::SweepConfig config) {
  const mfgi::SweepResult result = mfgi::run_sweep(config);
  mfgi::write_sweep_file(result, config.output_path, config.format);
  std::cout << "sweep: " << result.rows.size() << " rows -> " << config.output_path
            << " (max closed-form deviation " << result.max_deviation << ")\n";
  if (!result.flagged.empty()) {
    std::cerr << "sweep: " << result.flagged.size()
              << " rows disagree with the closed form beyond 1e-10:\n";
    for (const auto& d : result.flagged)
      std::cerr << "  alpha=" << d.generic.alpha << " L=" << d.generic.lipschitz_l
                << " H=" << d.generic.horizon << " deviation=" << d.max_abs_deviation
                << "\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int run_verify_bounds_command(const mfgi::SweepConfig& config, int tabular_trials) {
  const mfgi::BoundsResult result =
      mfgi::run_verify_bounds(config, std::nullopt, tabular_trials);
  mfgi::write_bounds_file(result, config.output_path, config.format);
  std::cout << "verify-bounds: " << result.grid_rows.size() << " grid rows, "
            << result.tabular_rows.size() << " tabular trials, " << result.violations
            << " violations -> " << config.output_path << "\n";
  if (result.violations > 0) {
    for (const auto& row : result.grid_rows)
      for (const auto& b : row.report.bounds)
        if (!b.satisfied)
          std::cerr << "  violated " << b.label << " at alpha=" << row.alpha
                    << " L=" << row.lipschitz_l << " H=" << row.horizon
                    << " (nig=" << row.report.nig << " bound=" << b.bound << ")\n";
    for (const auto& row : result.tabular_rows)
      for (const auto& b : row.report.bounds)
        if (!b.satisfied)
          std::cerr << "  violated " << b.label << " on tabular trial " << row.trial
                    << " (nig=" << row.report.nig << " bound=" << b.bound << ")\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int run_adversarial_command(const std::string& game_path, const std::string& mode,
                            const std::string& init, const std::string& out_path,
                            const mfgi::SolverOptions& options, double alpha_step) {
  const mfgi::GameSpec spec = mfgi::load_game(game_path);
  const bool attractor = std::holds_alternative<mfgi::AttractorKernel>(spec.mfg.kernel);

  mfgi::PolicySequence expert;
  if (spec.expert_policy) {
    expert = *spec.expert_policy;
  } else if (attractor) {
    expert = mfgi::alpha_policy(0.0, spec.mfg.horizon);
  } else {
    std::cerr << "adversarial: non-attractor game specs must carry expert_policy\n";
    return kExitInvalidInput;
  }

  mfgi::MinMaxTrace trace;
  if (mode == "vanilla") {
    if (init == "expert") {
      trace = mfgi::solve_vanilla_adversarial(spec.mfg, expert, options, &expert);
    } else {
      trace = mfgi::solve_vanilla_adversarial(spec.mfg, expert, options);
    }
  } else if (mode == "mfc") {
    const mfgi::PolicyFamily family =
        attractor ? mfgi::alpha_grid_family(spec.mfg.horizon, alpha_step)
                  : mfgi::deterministic_policy_family(spec.mfg);
    trace = mfgi::solve_mfc_adversarial(spec.mfg, expert, family, options);
  } else {
    std::cerr << "adversarial: mode must be vanilla or mfc\n";
    return kExitInvalidInput;
  }

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "adversarial: cannot write " << out_path << "\n";
    return kExitInvalidInput;
  }
  out << mfgi::trace_to_json(trace).dump(2) << "\n";
  std::cout << "adversarial (" << mode << "): final objective " << trace.final_objective
            << (trace.converged ? " (converged)" : " (iteration cap)") << " -> "
            << out_path << "\n";
  return kExitOk;
}

int run_selfcheck_command() {
  const std::vector<mfgi::SuiteResult> suites = mfgi::run_selfcheck();
  bool all_passed = true;
  for (const auto& suite : suites) {
    std::cout << (suite.passed ? "[PASS] " : "[FAIL] ") << suite.name << ": "
              << suite.detail << "\n";
    all_passed = all_passed && suite.passed;
  }
  return all_passed ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite mean-field games: flows, gaps, imitation proxies and bounds"};
  app.require_subcommand(1);

  mfgi::SweepConfig config = mfgi::SweepConfig::defaults();
  std::string format = "csv";
  std::string out_path;
  double alpha_step = 0.01;
  bool custom_alphas = false;

  auto add_grid_options = [&](CLI::App* cmd) {
    cmd->add_option("--alphas", config.alphas, "explicit alpha grid")
        ->each([&custom_alphas](const std::string&) { custom_alphas = true; });
    cmd->add_option("--alpha-step", alpha_step, "alpha grid step (default 0.01)");
    cmd->add_option("--lipschitz", config.lipschitz_values,
                    "L grid (default 0.01 0.1 0.5 1 2)");
    cmd->add_option("--horizons", config.horizons, "H grid (default 3 25 50 75 100)");
    cmd->add_option("--seed", config.seed, "rng seed");
    cmd->add_option("--out", out_path, "output file path");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* sweep = app.add_subcommand(
      "sweep", "error proxies and value gap over the benchmark grid");
  add_grid_options(sweep);

  int tabular_trials = 100;
  CLI::App* verify = app.add_subcommand(
      "verify-bounds", "check the performance bounds over the grid");
  add_grid_options(verify);
  verify->add_option("--tabular-trials", tabular_trials,
                     "number of random population-independent games (default 100)");

  std::string game_path, mode = "vanilla", init = "uniform";
  mfgi::SolverOptions solver_options;
  CLI::App* adversarial =
      app.add_subcommand("adversarial", "occupancy-matching min-max solvers");
  adversarial->add_option("--game", game_path, "game spec JSON")->required();
  adversarial->add_option("--mode", mode, "vanilla or mfc")
      ->check(CLI::IsMember({"vanilla", "mfc"}));
  adversarial->add_option("--init", init, "vanilla solver start: uniform or expert")
      ->check(CLI::IsMember({"uniform", "expert"}));
  adversarial->add_option("--max-iters", solver_options.max_iters, "iteration cap");
  adversarial->add_option("--tolerance", solver_options.tolerance,
                          "improvement tolerance");
  adversarial->add_option("--alpha-step", alpha_step,
                          "alpha family step for attractor games (mfc mode)");
  adversarial->add_option("--out", out_path, "output trace path");

  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "run the built-in verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (sweep->parsed()) {
      if (!custom_alphas) config.alphas = mfgi::alpha_grid(alpha_step);
      config.format = parse_format(format);
      config.output_path = out_path.empty()
                               ? default_output_path(config.format == mfgi::OutputFormat::Csv
                                                         ? "sweep.csv"
                                                         : "sweep.json")
                               : out_path;
      return run_sweep_command(config);
    }
    if (verify->parsed()) {
      if (!custom_alphas) config.alphas = mfgi::alpha_grid(alpha_step);
      config.format = parse_format(format);
      config.output_path = out_path.empty()
                               ? default_output_path(config.format == mfgi::OutputFormat::Csv
                                                         ? "bounds.csv"
                                                         : "bounds.json")
                               : out_path;
      return run_verify_bounds_command(config, tabular_trials);
    }
    if (adversarial->parsed()) {
      const std::string trace_path =
          out_path.empty() ? default_output_path("trace.json") : out_path;
      return run_adversarial_command(game_path, mode, init, trace_path, solver_options,
                                     alpha_step);
    }
    if (selfcheck->parsed()) return run_selfcheck_command();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
