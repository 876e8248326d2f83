#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Uniform momentum grid k_m = 2 pi m / n, m = 0..n-1.
struct KGrid {
  std::size_t n = 0;

  double node(std::size_t m) const;
  double spacing() const;
  // Smallest power of two >= width (and >= 8).
  static KGrid covering(std::int64_t width);

  friend bool operator==(const KGrid&, const KGrid&) = default;
};

// A C^2-valued function sampled on the nodes of a KGrid.
using KFunction = std::vector<Spinor>;

// phihat(k_m) = sum_x phi(x) e^{-i k_m x}. Exact for windows no wider than n.
// Throws ValidationError when the grid is too small for the window.
KFunction forward_dft(const StateVector& state, const KGrid& grid);

// Inverse transform evaluated on the window [lo, hi] (width <= n). For a band
// limited k-function this recovers the state exactly.
StateVector inverse_dft(const KFunction& f, std::int64_t lo, std::int64_t hi);

// Full period of the inverse transform: entry r holds the coefficient of every
// site x with x = r (mod n).
std::vector<Spinor> inverse_dft_period(const KFunction& f);

}  // namespace qwalk
