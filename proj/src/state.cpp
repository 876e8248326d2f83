#include "qwalk/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

StateVector::StateVector(std::int64_t lo, std::int64_t hi) : lo_(lo) {
  if (hi < lo) throw ValidationError("StateVector: empty window");
  amps_.assign(static_cast<std::size_t>(hi - lo + 1), Spinor{});
}

StateVector StateVector::single_site(std::int64_t x, const Spinor& s, std::int64_t window_lo, std::int64_t window_hi) {
  StateVector st(window_lo, window_hi);
  if (!st.in_window(x)) throw WindowGuardError("single_site: site outside window");
  st[x] = s;
  return st;
}

Spinor StateVector::at(std::int64_t x) const { return in_window(x) ? amps_[static_cast<std::size_t>(x - lo_)] : Spinor{}; }

Spinor& StateVector::operator[](std::int64_t x) { return amps_[static_cast<std::size_t>(x - lo_)]; }

const Spinor& StateVector::operator[](std::int64_t x) const { return amps_[static_cast<std::size_t>(x - lo_)]; }

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& s : amps_) {
    acc += std::norm(s.up);
    acc += std::norm(s.down);
  }
  return acc;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector StateVector::rewindowed(std::int64_t lo, std::int64_t hi) const {
  const SiteInterval supp = support_bounds(*this);
  if (!SiteInterval{lo, hi}.contains(supp)) {
    throw WindowGuardError("rewindowed: support [" + std::to_string(supp.lo) + ", " + std::to_string(supp.hi) +
                           "] does not fit window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  StateVector out(lo, hi);
  if (supp.empty()) return out;
  for (std::int64_t x = supp.lo; x <= supp.hi; ++x) out[x] = (*this)[x];
  return out;
}

StateVector StateVector::padded(std::int64_t margin) const {
  SiteInterval supp = support_bounds(*this);
  if (supp.empty()) supp = {0, 0};
  const SiteInterval w = supp.expanded(margin);
  return rewindowed(w.lo, w.hi);
}

namespace {

template <class Op>
void combine(StateVector& a, const StateVector& b, Op op) {
  if (!a.window().contains(b.window())) {
    const std::int64_t lo = std::min(a.window_lo(), b.window_lo());
    const std::int64_t hi = std::max(a.window_hi(), b.window_hi());
    StateVector grown(lo, hi);
    for (std::int64_t x = a.window_lo(); x <= a.window_hi(); ++x) grown[x] = a[x];
    a = std::move(grown);
  }
  for (std::int64_t x = b.window_lo(); x <= b.window_hi(); ++x) a[x] = op(a[x], b[x]);
}

}  // namespace

StateVector& StateVector::operator+=(const StateVector& o) {
  combine(*this, o, [](const Spinor& p, const Spinor& q) { return p + q; });
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  combine(*this, o, [](const Spinor& p, const Spinor& q) { return p - q; });
  return *this;
}

StateVector& StateVector::operator*=(cplx s) {
  for (auto& a : amps_) a = s * a;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(cplx s, StateVector a) { return a *= s; }

cplx inner(const StateVector& a, const StateVector& b) {
  const std::int64_t lo = std::max(a.window_lo(), b.window_lo());
  const std::int64_t hi = std::min(a.window_hi(), b.window_hi());
  cplx acc = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    acc += std::conj(a[x].up) * b[x].up;
    acc += std::conj(a[x].down) * b[x].down;
  }
  return acc;
}

double distance(const StateVector& a, const StateVector& b) {
  const std::int64_t lo = std::min(a.window_lo(), b.window_lo());
  const std::int64_t hi = std::max(a.window_hi(), b.window_hi());
  double acc = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) acc += (a.at(x) - b.at(x)).norm_squared();
  return std::sqrt(acc);
}

SiteInterval support_bounds(const StateVector& state, double tol) {
  const double tol2 = tol * tol;
  SiteInterval out;
  bool found = false;
  for (std::int64_t x = state.window_lo(); x <= state.window_hi(); ++x) {
    const Spinor& s = state[x];
    const bool nonzero = tol == 0.0 ? (s.up != 0.0 || s.down != 0.0) : s.norm_squared() > tol2;
    if (!nonzero) continue;
    if (!found) {
      out.lo = x;
      found = true;
    }
    out.hi = x;
  }
  if (!found) return SiteInterval{};
  return out;
}

StateVector trimmed(const StateVector& state, double rel_tol) {
  const SiteInterval keep = support_bounds(state, rel_tol * state.norm());
  if (keep.empty()) return StateVector(state.window_lo(), state.window_lo());
  StateVector out(keep.lo, keep.hi);
  for (std::int64_t x = keep.lo; x <= keep.hi; ++x) out[x] = state[x];
  return out;
}

}  // namespace qwalk
