#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// (S psi)(x) = (psi_up(x+1), psi_down(x-1)): the upper component moves one
// site left, the lower one site right.
StateVector apply_shift(const StateVector& state);
StateVector apply_shift_inverse(const StateVector& state);

// Pointwise C(x) = e^{i theta(x)} C0, or C0 when no profile is given.
StateVector apply_coin(const StateVector& state, const CoinSpec& coin, const std::optional<PhaseProfile>& profile = {});
StateVector apply_coin_inverse(const StateVector& state, const CoinSpec& coin,
                               const std::optional<PhaseProfile>& profile = {});

// Stepper for U = S C (or U0 = S C0) on a fixed window. The per-site phase
// table is built once, so repeated single steps stay O(support).
class Propagator {
 public:
  Propagator(const CoinSpec& coin, const std::optional<PhaseProfile>& profile, SiteInterval window);

  // psi <- U^t psi for signed t. Throws WindowGuardError unless the exact
  // support grown by |t| fits the window; the state's window must equal ours.
  void advance(StateVector& psi, std::int64_t t) const;

  // (U0 - U) psi = S (1 - e^{i theta}) C0 psi, returned on the same window.
  StateVector perturbation_difference(const StateVector& psi) const;

  const CoinSpec& coin() const { return coin_; }
  const std::optional<PhaseProfile>& profile() const { return profile_; }
  SiteInterval window() const { return window_; }

 private:
  void forward_step(StateVector& psi, SiteInterval& supp) const;
  void backward_step(StateVector& psi, SiteInterval& supp) const;
  cplx phase(std::int64_t x) const { return phases_.empty() ? cplx(1.0) : phases_[static_cast<std::size_t>(x - window_.lo)]; }

  CoinSpec coin_;
  std::optional<PhaseProfile> profile_;
  SiteInterval window_;
  Mat2 c0_;
  Mat2 c0_inv_;
  std::vector<cplx> phases_;  // empty when the walk is unperturbed
};

// U^t psi (U0^t psi without a profile), t signed.
StateVector evolve(const StateVector& state, const CoinSpec& coin, const std::optional<PhaseProfile>& profile,
                   std::int64_t t);

// Window sizing that keeps a finite window exact: every state derived from
// `support` under at most t_max steps (2 t_max for round trips) stays inside.
struct EvolutionPlan {
  std::int64_t t_max = 0;
  bool round_trip = false;
  std::int64_t extra_margin = 0;

  SiteInterval window_for(const SiteInterval& support) const;
  StateVector embed(const StateVector& state) const;
};

// Im <(U0 - U) psi, U0 psi> through the sin-sum form sum_x sin(theta(x)) ||psi(x)||^2.
double perturbation_sin_sum(const StateVector& psi, const PhaseProfile& profile);

}  // namespace qwalk
