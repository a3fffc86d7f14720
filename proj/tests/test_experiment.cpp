#include <doctest.h>

#include <sstream>

#include "mfgi/experiment.hpp"
#include "test_support.hpp"

using namespace mfgi;

TEST_CASE("the default grid matches the study grids") {
  const SweepConfig config = SweepConfig::defaults();
  CHECK(config.alphas.size() == 101);
  CHECK(config.alphas.front() == 0.0);
  CHECK(config.alphas.back() == 1.0);
  CHECK(config.lipschitz_values == std::vector<double>{0.01, 0.1, 0.5, 1.0, 2.0});
  CHECK(config.horizons == std::vector<int>{3, 25, 50, 75, 100});
}

TEST_CASE("sweep rows carry the known values in deterministic order") {
  SweepConfig config;
  config.alphas = {0.0, 0.5, 1.0};
  config.lipschitz_values = {1.0, 2.0};
  config.horizons = {3, 100};
  const SweepResult result = run_sweep(config);
  REQUIRE(result.flagged.empty());
  REQUIRE(result.rows.size() == 12);

  // alpha-major, then L, then H
  CHECK(result.rows[0].alpha == 0.0);
  CHECK(result.rows[0].lipschitz_l == 1.0);
  CHECK(result.rows[0].horizon == 3);
  CHECK(result.rows[1].horizon == 100);
  CHECK(result.rows[2].lipschitz_l == 2.0);
  CHECK(result.rows[4].alpha == 0.5);

  for (const SweepRow& row : result.rows) {
    if (row.alpha == 0.0) {
      CHECK(row.eps_bc_max == 0.0);
      CHECK(row.eps_vanilla_max == 0.0);
      CHECK(row.eps_mfc_max == 0.0);
      CHECK(row.nig == 0.0);
    }
    if (row.alpha == 1.0) CHECK_NEAR(row.nig, row.horizon - 1.0, 1e-12);
    CHECK_NEAR(row.eps_bc_max, 2.0 * row.alpha, 1e-12);
    CHECK(row.nig >= 0.0);
    CHECK(row.eps_mfc_max <= 2.0 + 1e-15);
  }

  const SweepRow& mixed = result.rows[4];  // alpha=0.5, L=1, H=3
  CHECK_NEAR(mixed.eps_bc_max, 1.0, 1e-12);
  CHECK_NEAR(mixed.eps_vanilla_max, 1.75, 1e-12);
  CHECK_NEAR(mixed.eps_mfc_max, 1.875, 1e-12);
  CHECK_NEAR(mixed.nig, 1.375, 1e-12);

  const SweepRow& worst = result.rows[11];  // alpha=1, L=2, H=100
  CHECK(worst.nig == 99.0);
}

TEST_CASE("sweep output is byte-identical across runs") {
  SweepConfig config;
  config.alphas = alpha_grid(0.1);
  config.lipschitz_values = {0.5, 2.0};
  config.horizons = {3, 25};

  std::ostringstream csv_a, csv_b, json_a, json_b;
  write_sweep_csv(run_sweep(config), csv_a);
  write_sweep_csv(run_sweep(config), csv_b);
  write_sweep_json(run_sweep(config), json_a);
  write_sweep_json(run_sweep(config), json_b);
  CHECK(csv_a.str() == csv_b.str());
  CHECK(json_a.str() == json_b.str());
  CHECK(csv_a.str().rfind("alpha,L,H,eps_bc_max,eps_vanilla_max,eps_mfc_max,nig\n",
                          0) == 0);
}

TEST_CASE("csv floats round-trip through 17 significant digits") {
  SweepConfig config;
  config.alphas = {1.0 / 3.0};
  config.lipschitz_values = {1.0};
  config.horizons = {25};
  const SweepResult result = run_sweep(config);
  std::ostringstream out;
  write_sweep_csv(result, out);
  std::istringstream in(out.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  const double alpha = std::stod(line.substr(0, line.find(',')));
  CHECK(alpha == 1.0 / 3.0);
  const double nig = std::stod(line.substr(line.rfind(',') + 1));
  CHECK(nig == result.rows[0].nig);
}

TEST_CASE("gap interpolation along an error curve") {
  const std::vector<CurvePoint> curve = {{0.0, 0.0}, {1.0, 2.0}, {1.0, 3.0}, {2.0, 10.0}};
  CHECK(nig_at_epsilon(curve, -1.0) == 0.0);
  CHECK(nig_at_epsilon(curve, 0.5) == 1.0);
  CHECK(nig_at_epsilon(curve, 1.0) == 2.0);  // flat stretch: first crossing
  CHECK(nig_at_epsilon(curve, 1.5) == 6.5);
  CHECK(nig_at_epsilon(curve, 3.0) == 10.0);
  CHECK_THROWS_AS(nig_at_epsilon({}, 0.5), std::invalid_argument);
}

TEST_CASE("proxy ordering holds across the full default grid") {
  const SweepResult result = run_sweep(SweepConfig::defaults());
  REQUIRE(result.flagged.empty());
  CHECK(check_proxy_ordering(result.rows, 101).empty());
  CHECK(max_vanilla_mfc_gap(result.rows, 0.01, 3) <= 0.05);
}

TEST_CASE("bound verification on a reduced grid and tabular trials") {
  SweepConfig config;
  config.alphas = alpha_grid(0.2);
  config.lipschitz_values = {0.01, 2.0};
  config.horizons = {3, 25};
  config.seed = 42;
  const BoundsResult result = run_verify_bounds(config, std::nullopt, 20);
  CHECK(result.violations == 0);
  CHECK(result.grid_rows.size() == 6 * 2 * 2);
  CHECK(result.tabular_rows.size() == 20);
  for (const auto& row : result.grid_rows) {
    REQUIRE(row.report.bounds.size() == 3);
    CHECK(row.report.bounds[0].label == "thm3_bc");
    CHECK(row.report.bounds[1].label == "thm4_vanilla_adv");
    CHECK(row.report.bounds[2].label == "thm5_mfc_adv");
  }
  for (const auto& row : result.tabular_rows) {
    REQUIRE(row.report.bounds.size() == 2);
    CHECK(row.report.bounds[0].label == "thm1_bc_lp0");
    CHECK(row.report.bounds[1].label == "thm2_adv_lp0");
  }

  std::ostringstream json_out;
  write_bounds_json(result, json_out);
  CHECK(json_out.str().find("\"violations\": 0") != std::string::npos);
  std::ostringstream grid_csv, tabular_csv;
  write_bounds_csv(result, grid_csv, tabular_csv);
  CHECK(grid_csv.str().rfind("alpha,L,H,nig,theorem,bound,ratio,satisfied\n", 0) == 0);
}

TEST_CASE("self-check passes as built and fails on a corrupted benchmark") {
  for (const SuiteResult& suite : run_selfcheck()) CHECK(suite.passed);

  // Negative control: mis-scale the population coupling so the generic
  // pipeline no longer matches the direct recursion.
  const AttractorBuilder broken = [](double lipschitz_l, int horizon) {
    FiniteMfg mfg = mfgi::testing::attractor_as_linear_coupling(lipschitz_l, horizon);
    std::get<LinearCouplingKernel>(mfg.kernel).coupling[1] = 0.9 * lipschitz_l;
    return mfg;
  };
  bool grid_failed = false;
  for (const SuiteResult& suite : run_selfcheck(broken))
    if (suite.name == "grid-equivalence") grid_failed = !suite.passed;
  CHECK(grid_failed);
}

TEST_CASE("rows that miss the tolerance are flagged, not emitted") {
  SweepConfig config;
  config.alphas = {0.3, 0.7};
  config.lipschitz_values = {2.0};
  config.horizons = {50};
  // Zero tolerance turns ordinary roundoff between the two routes into
  // disagreements, which exercises the flagging path.
  const SweepResult result = run_sweep(config, 0.0);
  CHECK(result.rows.size() + result.flagged.size() == 2);
  CHECK(!result.flagged.empty());
  for (const SweepDisagreement& d : result.flagged) {
    CHECK(d.max_abs_deviation > 0.0);
    CHECK(d.generic.alpha == d.closed_form.alpha);
  }
}

TEST_CASE("sweep rejects empty grids") {
  SweepConfig config;
  config.lipschitz_values = {1.0};
  config.horizons = {3};
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
}
