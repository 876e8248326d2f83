#include "qwalk/coin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

double reduce_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

}  // namespace

Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

Mat2 operator*(cplx s, const Mat2& a) { return {s * a.m00, s * a.m01, s * a.m10, s * a.m11}; }

double CoinSpec::b_mod() const { return std::sqrt(std::max(0.0, 1.0 - a_mod_ * a_mod_)); }

Mat2 CoinSpec::matrix() const {
  const cplx phase = std::polar(1.0, delta_);
  const cplx av = a();
  const cplx bv = b();
  return {av, bv, -phase * std::conj(bv), phase * std::conj(av)};
}

CoinSpec build_coin(double a_mod, double a_arg, double b_arg, double delta) {
  if (!std::isfinite(a_mod) || !std::isfinite(a_arg) || !std::isfinite(b_arg) || !std::isfinite(delta)) {
    throw ValidationError("build_coin: non-finite coin parameter");
  }
  constexpr double slack = 1e-12;
  if (a_mod < -slack || a_mod > 1.0 + slack) {
    throw ValidationError("build_coin: a_mod = " + std::to_string(a_mod) + " outside [0, 1]");
  }
  CoinSpec c;
  c.a_mod_ = std::clamp(a_mod, 0.0, 1.0);
  c.a_arg_ = reduce_angle(a_arg);
  c.b_arg_ = reduce_angle(b_arg);
  c.delta_ = reduce_angle(delta);
  return c;
}

CoinSpec hadamard_coin() { return build_coin(std::numbers::sqrt2 / 2.0, 0.0, 0.0, std::numbers::pi); }

PhaseProfile make_profile(double gamma, double g) {
  if (!std::isfinite(gamma) || gamma <= 0.0) throw ValidationError("profile: gamma must be > 0");
  if (!std::isfinite(g) || g < 0.0 || g > 1.0) throw ValidationError("profile: g must lie in [0, 1]");
  return {gamma, g};
}

double phase_at(const PhaseProfile& profile, std::int64_t x) {
  if (profile.g == 0.0) return 0.0;
  const double r = 1.0 + std::abs(static_cast<double>(x));
  return profile.g * std::pow(r, -profile.gamma);
}

double coin_difference_norm(const PhaseProfile& profile, std::int64_t x) {
  return 2.0 * std::abs(std::sin(0.5 * phase_at(profile, x)));
}

}  // namespace qwalk
