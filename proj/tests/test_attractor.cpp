#include <doctest.h>

#include <random>

#include "mfgi/attractor.hpp"
#include "mfgi/experiment.hpp"
#include "mfgi/flows.hpp"
#include "mfgi/imitation.hpp"
#include "test_support.hpp"

using namespace mfgi;
using namespace mfgi::testing;

TEST_CASE("attractor kernel probes") {
  const FiniteMfg mfg = build_attractor(2.0, 3);
  double row[2];

  const double all_safe[2] = {1.0, 0.0};
  kernel_row(mfg, 0, 0, all_safe, row);
  CHECK(row[1] == 0.0);

  const double all_in[2] = {0.0, 1.0};
  kernel_row(mfg, 0, 0, all_in, row);
  CHECK(row[1] == 1.0);  // clipped at 1

  const double mixed[2] = {0.7, 0.3};
  kernel_row(mfg, 0, 0, mixed, row);
  CHECK_NEAR(row[1], 0.6, 1e-15);

  kernel_row(mfg, 0, 1, all_safe, row);
  CHECK(row[1] == 1.0);  // jumping is deterministic
  kernel_row(mfg, 1, 0, mixed, row);
  CHECK(row[1] == 1.0);  // absorbing

  CHECK(reward_at(mfg, 1, 0, mixed) == -1.0);
  CHECK(reward_at(mfg, 1, 1, all_safe) == -1.0);
  CHECK(reward_at(mfg, 0, 1, mixed) == 0.0);
}

TEST_CASE("attractor construction rejects bad parameters") {
  CHECK_THROWS_AS(build_attractor(-0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_attractor(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(alpha_policy(1.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(alpha_policy(-0.1, 3), std::invalid_argument);
}

TEST_CASE("alpha policy rows") {
  const PolicySequence ne = alpha_policy(0.0, 3);
  const PolicySequence worst = alpha_policy(1.0, 3);
  const PolicySequence mixed = alpha_policy(0.5, 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(ne.at(n, 0, 0) == 1.0);
    CHECK(worst.at(n, 0, 1) == 1.0);
    CHECK(mixed.at(n, 0, 0) == 0.5);
    CHECK(mixed.at(n, 0, 1) == 0.5);
    CHECK(ne.at(n, 1, 0) == 0.5);  // s1 rows are uniform
  }
}

TEST_CASE("attractor kernel matches its linear-coupling encoding") {
  const FiniteMfg builtin = build_attractor(1.7, 3);
  const FiniteMfg encoded = attractor_as_linear_coupling(1.7, 3);
  std::mt19937_64 rng(61);
  double a[2], b[2];
  for (int probe = 0; probe < 100; ++probe) {
    const double mass = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double rho[2] = {1.0 - mass, mass};
    for (int s = 0; s < 2; ++s)
      for (int act = 0; act < 2; ++act) {
        kernel_row(builtin, s, act, rho, a);
        kernel_row(encoded, s, act, rho, b);
        CHECK_NEAR(a[0], b[0], 1e-15);
        CHECK_NEAR(a[1], b[1], 1e-15);
      }
  }
}

TEST_CASE("closed-form profile: equilibrium and worst case") {
  const ClosedFormProfile ne = closed_form_profile({1.0, 4, 0.0});
  for (int n = 0; n < 4; ++n) {
    CHECK(ne.rho_pop_s1[n] == 0.0);
    CHECK(ne.eps_bc[n] == 0.0);
    CHECK(ne.eps_vanilla[n] == 0.0);
    CHECK(ne.eps_mfc[n] == 0.0);
  }
  CHECK(ne.nig == 0.0);

  for (int horizon : {3, 25, 100}) {
    const ClosedFormProfile worst = closed_form_profile({2.0, horizon, 1.0});
    CHECK(worst.nig == horizon - 1.0);
  }
}

TEST_CASE("closed-form profile: alpha=0.5, L=1, H=3 hand values") {
  const ClosedFormProfile cf = closed_form_profile({1.0, 3, 0.5});
  CHECK_NEAR(cf.rho_pop_s1[2], 0.875, 1e-15);
  CHECK_NEAR(cf.rho_expertpop_s1[2], 0.75, 1e-15);
  CHECK_NEAR(*std::max_element(cf.eps_vanilla.begin(), cf.eps_vanilla.end()), 1.75,
             1e-15);
  CHECK_NEAR(*std::max_element(cf.eps_mfc.begin(), cf.eps_mfc.end()), 1.875, 1e-15);
  CHECK_NEAR(cf.nig, 1.375, 1e-12);
}

TEST_CASE("closed-form invariants: monotone occupancy, nig equals the mass sum") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const double lipschitz_l = (rng() % 200) / 100.0;
    const int horizon = 2 + static_cast<int>(rng() % 30);
    const double alpha = (rng() % 101) / 100.0;
    const ClosedFormProfile cf = closed_form_profile({lipschitz_l, horizon, alpha});
    double sum = 0.0;
    for (int n = 0; n < horizon; ++n) {
      CHECK(cf.rho_pop_s1[n] >= 0.0);
      CHECK(cf.rho_pop_s1[n] <= 1.0);
      if (n > 0) {
        CHECK(cf.rho_pop_s1[n] >= cf.rho_pop_s1[n - 1]);
        CHECK(cf.rho_expertpop_s1[n] >= cf.rho_expertpop_s1[n - 1]);
      }
      sum += cf.rho_pop_s1[n];
    }
    CHECK_NEAR(cf.nig, sum, 1e-12);
  }
}

TEST_CASE("closed form agrees with the generic pipeline across the study grid") {
  // The full grid runs in the self-check and acceptance suites; this covers a
  // representative slice including both clipped and unclipped regimes.
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (double lipschitz_l : {0.01, 1.0, 2.0})
      for (int horizon : {3, 25, 100}) {
        const ClosedFormProfile cf =
            closed_form_profile({lipschitz_l, horizon, alpha});
        const FiniteMfg mfg = build_attractor(lipschitz_l, horizon);
        const PolicySequence expert = alpha_policy(0.0, horizon);
        const PolicySequence policy = alpha_policy(alpha, horizon);

        const FlowSequence pop = population_flow(mfg, policy);
        const FlowSequence agent = single_agent_flow(mfg, expert, policy);
        const ErrorProfile bc = bc_error(mfg, expert, policy);
        const ErrorProfile vanilla = vanilla_adv_error(mfg, expert, policy);
        const ErrorProfile mfc = mfc_adv_error(mfg, expert, policy);

        for (int n = 0; n < horizon; ++n) {
          CHECK_NEAR(pop.rho(n, 1), cf.rho_pop_s1[n], 1e-10);
          CHECK_NEAR(agent.rho(n, 1), cf.rho_expertpop_s1[n], 1e-10);
          CHECK_NEAR(bc.per_step[n], cf.eps_bc[n], 1e-10);
          CHECK_NEAR(vanilla.per_step[n], cf.eps_vanilla[n], 1e-10);
          CHECK_NEAR(mfc.per_step[n], cf.eps_mfc[n], 1e-10);
        }
        CHECK_NEAR(equilibrium_value_gap(mfg, expert, policy), cf.nig, 1e-10);
      }
}

TEST_CASE("the gap is nondecreasing in alpha on the study grid") {
  for (double lipschitz_l : {0.01, 0.1, 0.5, 1.0, 2.0})
    for (int horizon : {3, 25, 50, 75, 100}) {
      double previous = -1.0;
      for (int i = 0; i <= 20; ++i) {
        const double nig =
            closed_form_profile({lipschitz_l, horizon, i / 20.0}).nig;
        CHECK(nig >= previous - 1e-12);
        previous = nig;
      }
    }
}

TEST_CASE("the bc profile is constant in n and equals 2 alpha exactly") {
  for (double alpha : {0.0, 0.01, 0.33, 0.5, 0.99, 1.0}) {
    const ClosedFormProfile cf = closed_form_profile({1.0, 10, alpha});
    for (double e : cf.eps_bc) CHECK(e == 2.0 * alpha);
  }
}
