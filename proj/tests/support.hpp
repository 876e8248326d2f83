#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"

namespace qwalk::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline cplx gaussian_cplx(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

// Random coin; every fifth draw sits on an edge (|a| = 0 or 1).
inline CoinSpec random_coin(Rng& rng) {
  const double tau = 2.0 * std::numbers::pi;
  double a_mod = uniform(rng, 0.0, 1.0);
  const auto pick = uniform_int(rng, 0, 9);
  if (pick == 0) a_mod = 0.0;
  if (pick == 1) a_mod = 1.0;
  return build_coin(a_mod, uniform(rng, 0, tau), uniform(rng, 0, tau), uniform(rng, 0, tau));
}

// Random coin strictly inside 0 < |a| < 1.
inline CoinSpec random_generic_coin(Rng& rng) {
  const double tau = 2.0 * std::numbers::pi;
  return build_coin(uniform(rng, 0.05, 0.95), uniform(rng, 0, tau), uniform(rng, 0, tau), uniform(rng, 0, tau));
}

// Random normalized state with support inside [lo, hi], stored on [wlo, whi].
inline StateVector random_state(Rng& rng, std::int64_t lo, std::int64_t hi, std::int64_t wlo, std::int64_t whi) {
  StateVector s(wlo, whi);
  for (std::int64_t x = lo; x <= hi; ++x) s[x] = Spinor{gaussian_cplx(rng), gaussian_cplx(rng)};
  s *= cplx(1.0 / s.norm());
  return s;
}

inline Spinor chiral_spinor() { return {cplx(1.0 / std::sqrt(2.0)), cplx(0.0, 1.0 / std::sqrt(2.0))}; }

}  // namespace qwalk::testing
