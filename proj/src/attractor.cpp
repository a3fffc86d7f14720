#include "mfgi/attractor.hpp"

#include <algorithm>

namespace mfgi {

FiniteMfg build_attractor(double lipschitz_l, int horizon) {
  if (lipschitz_l < 0.0) throw std::invalid_argument("attractor L must be nonnegative");
  if (horizon < 1) throw std::invalid_argument("attractor horizon must be positive");
  FiniteMfg mfg;
  mfg.num_states = 2;
  mfg.num_actions = 2;
  mfg.horizon = horizon;
  mfg.initial_distribution = {1.0, 0.0};
  mfg.kernel = AttractorKernel{lipschitz_l};
  mfg.reward.base = {0.0, 0.0, -1.0, -1.0};  // [s][a]
  mfg.reward.congestion_coeff = 0.0;
  mfg.validate();
  return mfg;
}

PolicySequence alpha_policy(double alpha, int horizon) {
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in [0, 1]");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  PolicySequence pi;
  pi.horizon = horizon;
  pi.num_states = 2;
  pi.num_actions = 2;
  pi.probs.resize(static_cast<size_t>(horizon) * 4);
  for (int n = 0; n < horizon; ++n) {
    pi.at(n, 0, 0) = 1.0 - alpha;
    pi.at(n, 0, 1) = alpha;
    pi.at(n, 1, 0) = 0.5;
    pi.at(n, 1, 1) = 0.5;
  }
  return pi;
}

ClosedFormProfile closed_form_profile(const AttractorParams& params) {
  const double L = params.lipschitz_l;
  const int H = params.horizon;
  const double alpha = params.alpha;
  if (L < 0.0) throw std::invalid_argument("attractor L must be nonnegative");
  if (H < 1) throw std::invalid_argument("attractor horizon must be positive");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in [0, 1]");

  ClosedFormProfile out;
  out.rho_pop_s1.resize(H);
  out.rho_expertpop_s1.resize(H);
  out.eps_bc.resize(H);
  out.eps_vanilla.resize(H);
  out.eps_mfc.resize(H);

  out.rho_pop_s1[0] = 0.0;
  out.rho_expertpop_s1[0] = 0.0;
  for (int n = 0; n + 1 < H; ++n) {
    const double rp = out.rho_pop_s1[n];
    out.rho_pop_s1[n + 1] =
        rp + (1.0 - rp) * (alpha + (1.0 - alpha) * std::min(1.0, L * rp));
    const double re = out.rho_expertpop_s1[n];
    // Under the expert population the mass in s1 stays 0, so the safe action
    // never falls in and only the deliberate jumps accumulate.
    out.rho_expertpop_s1[n + 1] = re + (1.0 - re) * alpha;
  }

  out.nig = 0.0;
  for (int n = 0; n < H; ++n) {
    out.eps_bc[n] = 2.0 * alpha;
    out.eps_vanilla[n] = 2.0 * (alpha + out.rho_expertpop_s1[n] * (1.0 - alpha));
    out.eps_mfc[n] = 2.0 * (alpha + out.rho_pop_s1[n] * (1.0 - alpha));
    out.nig += out.rho_pop_s1[n];
  }
  return out;
}

}  // namespace mfgi
