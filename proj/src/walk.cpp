#include "qwalk/walk.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

bool perturbed(const std::optional<PhaseProfile>& profile) { return profile.has_value() && profile->g != 0.0; }

std::string interval_str(const SiteInterval& s) {
  return "[" + std::to_string(s.lo) + ", " + std::to_string(s.hi) + "]";
}

}  // namespace

namespace {

// Moves upper components by `up_step` and lower ones by -up_step.
StateVector shifted(const StateVector& state, std::int64_t up_step, const char* who) {
  StateVector out(state.window_lo(), state.window_hi());
  for (std::int64_t x = state.window_lo(); x <= state.window_hi(); ++x) {
    const Spinor& s = state[x];
    for (const auto& [amp, to] : {std::pair{s.up, x + up_step}, std::pair{s.down, x - up_step}}) {
      if (amp == cplx(0.0)) continue;
      if (!out.in_window(to)) {
        throw WindowGuardError(std::string(who) + ": amplitude at " + std::to_string(x) + " would leave window " +
                               interval_str(state.window()));
      }
    }
    if (s.up != cplx(0.0)) out[x + up_step].up = s.up;
    if (s.down != cplx(0.0)) out[x - up_step].down = s.down;
  }
  return out;
}

}  // namespace

StateVector apply_shift(const StateVector& state) { return shifted(state, -1, "apply_shift"); }

StateVector apply_shift_inverse(const StateVector& state) { return shifted(state, 1, "apply_shift_inverse"); }

StateVector apply_coin(const StateVector& state, const CoinSpec& coin, const std::optional<PhaseProfile>& profile) {
  const Mat2 c0 = coin.matrix();
  StateVector out = state;
  const bool with_phase = perturbed(profile);
  for (std::int64_t x = out.window_lo(); x <= out.window_hi(); ++x) {
    Spinor s = c0 * out[x];
    if (with_phase) s = std::polar(1.0, phase_at(*profile, x)) * s;
    out[x] = s;
  }
  return out;
}

StateVector apply_coin_inverse(const StateVector& state, const CoinSpec& coin,
                               const std::optional<PhaseProfile>& profile) {
  const Mat2 c0_inv = coin.matrix().adjoint();
  StateVector out = state;
  const bool with_phase = perturbed(profile);
  for (std::int64_t x = out.window_lo(); x <= out.window_hi(); ++x) {
    Spinor s = c0_inv * out[x];
    if (with_phase) s = std::polar(1.0, -phase_at(*profile, x)) * s;
    out[x] = s;
  }
  return out;
}

Propagator::Propagator(const CoinSpec& coin, const std::optional<PhaseProfile>& profile, SiteInterval window)
    : coin_(coin), profile_(profile), window_(window), c0_(coin.matrix()), c0_inv_(coin.matrix().adjoint()) {
  if (window_.empty()) throw ValidationError("Propagator: empty window");
  if (perturbed(profile_)) {
    phases_.resize(static_cast<std::size_t>(window_.width()));
    for (std::int64_t x = window_.lo; x <= window_.hi; ++x) {
      phases_[static_cast<std::size_t>(x - window_.lo)] = std::polar(1.0, phase_at(*profile_, x));
    }
  }
}

void Propagator::forward_step(StateVector& psi, SiteInterval& supp) const {
  // Coin on the support, then upper components left, lower components right.
  for (std::int64_t x = supp.lo; x <= supp.hi; ++x) {
    Spinor s = c0_ * psi[x];
    if (!phases_.empty()) s = phase(x) * s;
    psi[x] = s;
  }
  for (std::int64_t x = supp.lo - 1; x < supp.hi; ++x) psi[x].up = psi[x + 1].up;
  psi[supp.hi].up = 0.0;
  for (std::int64_t x = supp.hi + 1; x > supp.lo; --x) psi[x].down = psi[x - 1].down;
  psi[supp.lo].down = 0.0;
  supp = supp.expanded(1);
}

void Propagator::backward_step(StateVector& psi, SiteInterval& supp) const {
  // U^{-1} = C^{-1} S^{-1}.
  for (std::int64_t x = supp.hi + 1; x > supp.lo; --x) psi[x].up = psi[x - 1].up;
  psi[supp.lo].up = 0.0;
  for (std::int64_t x = supp.lo - 1; x < supp.hi; ++x) psi[x].down = psi[x + 1].down;
  psi[supp.hi].down = 0.0;
  supp = supp.expanded(1);
  for (std::int64_t x = supp.lo; x <= supp.hi; ++x) {
    Spinor s = c0_inv_ * psi[x];
    if (!phases_.empty()) s = std::conj(phase(x)) * s;
    psi[x] = s;
  }
}

void Propagator::advance(StateVector& psi, std::int64_t t) const {
  if (psi.window() != window_) throw WindowGuardError("Propagator: state window differs from propagator window");
  SiteInterval supp = support_bounds(psi);
  if (supp.empty() || t == 0) return;
  const std::int64_t steps = std::abs(t);
  if (!window_.contains(supp.expanded(steps))) {
    throw WindowGuardError("evolve: support " + interval_str(supp) + " grown by " + std::to_string(steps) +
                           " steps leaves window " + interval_str(window_));
  }
  for (std::int64_t i = 0; i < steps; ++i) {
    if (t > 0) {
      forward_step(psi, supp);
    } else {
      backward_step(psi, supp);
    }
  }
}

StateVector Propagator::perturbation_difference(const StateVector& psi) const {
  if (psi.window() != window_) throw WindowGuardError("Propagator: state window differs from propagator window");
  const SiteInterval supp = support_bounds(psi);
  StateVector out(window_.lo, window_.hi);
  if (supp.empty() || phases_.empty()) return out;
  if (!window_.contains(supp.expanded(1))) throw WindowGuardError("perturbation_difference: no room for one step");
  for (std::int64_t x = supp.lo; x <= supp.hi; ++x) {
    // 1 - e^{i theta} = -2i sin(theta/2) e^{i theta/2}, avoiding cancellation.
    const double th = phase_at(*profile_, x);
    const cplx factor = cplx(0.0, -2.0 * std::sin(0.5 * th)) * std::polar(1.0, 0.5 * th);
    const Spinor c = factor * (c0_ * psi[x]);
    out[x - 1].up = c.up;
    out[x + 1].down = c.down;
  }
  return out;
}

StateVector evolve(const StateVector& state, const CoinSpec& coin, const std::optional<PhaseProfile>& profile,
                   std::int64_t t) {
  StateVector out = state;
  if (t == 0) return out;
  Propagator prop(coin, profile, state.window());
  prop.advance(out, t);
  return out;
}

SiteInterval EvolutionPlan::window_for(const SiteInterval& support) const {
  const SiteInterval base = support.empty() ? SiteInterval{0, 0} : support;
  return base.expanded((round_trip ? 2 : 1) * t_max + extra_margin);
}

StateVector EvolutionPlan::embed(const StateVector& state) const {
  const SiteInterval w = window_for(support_bounds(state));
  return state.rewindowed(w.lo, w.hi);
}

double perturbation_sin_sum(const StateVector& psi, const PhaseProfile& profile) {
  double acc = 0.0;
  for (std::int64_t x = psi.window_lo(); x <= psi.window_hi(); ++x) {
    acc += std::sin(phase_at(profile, x)) * psi[x].norm_squared();
  }
  return acc;
}

}  // namespace qwalk
