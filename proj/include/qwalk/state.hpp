#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

// Closed integer interval of lattice sites; lo > hi marks the empty interval.
struct SiteInterval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return lo > hi; }
  std::int64_t width() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(const SiteInterval& o) const { return o.empty() || (!empty() && lo <= o.lo && o.hi <= hi); }
  SiteInterval expanded(std::int64_t r) const { return empty() ? *this : SiteInterval{lo - r, hi + r}; }

  friend bool operator==(const SiteInterval&, const SiteInterval&) = default;
};

// A finitely supported element of l^2(Z; C^2), stored on an explicit window of
// sites [window_lo, window_hi]. Everything outside the window is exactly zero.
class StateVector {
 public:
  StateVector() = default;
  // Zero state on the window [lo, hi].
  StateVector(std::int64_t lo, std::int64_t hi);

  static StateVector single_site(std::int64_t x, const Spinor& s, std::int64_t window_lo, std::int64_t window_hi);

  std::int64_t window_lo() const { return lo_; }
  std::int64_t window_hi() const { return lo_ + static_cast<std::int64_t>(amps_.size()) - 1; }
  SiteInterval window() const { return {window_lo(), window_hi()}; }
  std::int64_t width() const { return static_cast<std::int64_t>(amps_.size()); }
  bool in_window(std::int64_t x) const { return x >= window_lo() && x <= window_hi(); }

  // Amplitude at x; zero outside the window.
  Spinor at(std::int64_t x) const;
  // Mutable access; x must lie in the window.
  Spinor& operator[](std::int64_t x);
  const Spinor& operator[](std::int64_t x) const;

  std::span<Spinor> amplitudes() { return amps_; }
  std::span<const Spinor> amplitudes() const { return amps_; }

  double norm_squared() const;
  double norm() const;

  // Same amplitudes on a different window. Throws WindowGuardError if a
  // nonzero amplitude would fall outside the new window.
  StateVector rewindowed(std::int64_t lo, std::int64_t hi) const;
  // Window = exact support expanded by `margin` on each side.
  StateVector padded(std::int64_t margin) const;

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(cplx s);

 private:
  std::int64_t lo_ = 0;
  std::vector<Spinor> amps_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(cplx s, StateVector a);

// <a, b> summed in ascending site order, upper then lower component.
cplx inner(const StateVector& a, const StateVector& b);
// ||a - b|| over the union of both windows.
double distance(const StateVector& a, const StateVector& b);

// Smallest interval containing every site with ||psi(x)|| > tol; empty
// interval when there is none.
SiteInterval support_bounds(const StateVector& state, double tol = 0.0);

// Zero every site with ||psi(x)|| <= tol * ||state|| outside the interval
// returned by support_bounds; the window is shrunk to that interval.
StateVector trimmed(const StateVector& state, double rel_tol);

// Pointwise multiplication by f(x).
template <class F>
StateVector multiply_by_position(const StateVector& s, F&& f) {
  StateVector out = s;
  for (std::int64_t x = s.window_lo(); x <= s.window_hi(); ++x) {
    const auto factor = f(x);
    out[x] = cplx(factor) * out[x];
  }
  return out;
}

}  // namespace qwalk
