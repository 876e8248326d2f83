#pragma once

#include <complex>
#include <cstdint>

namespace qwalk {

using cplx = std::complex<double>;

// Two-component chirality spinor.
struct Spinor {
  cplx up{};
  cplx down{};

  friend bool operator==(const Spinor&, const Spinor&) = default;
  double norm_squared() const { return std::norm(up) + std::norm(down); }
};

inline Spinor operator+(const Spinor& a, const Spinor& b) { return {a.up + b.up, a.down + b.down}; }
inline Spinor operator-(const Spinor& a, const Spinor& b) { return {a.up - b.up, a.down - b.down}; }
inline Spinor operator*(cplx s, const Spinor& a) { return {s * a.up, s * a.down}; }

// <a, b>, conjugate-linear in the left argument.
inline cplx dot(const Spinor& a, const Spinor& b) {
  return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

// Row-major 2x2 complex matrix.
struct Mat2 {
  cplx m00{}, m01{}, m10{}, m11{};

  Spinor operator*(const Spinor& s) const { return {m00 * s.up + m01 * s.down, m10 * s.up + m11 * s.down}; }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }
  cplx det() const { return m00 * m11 - m01 * m10; }
  cplx trace() const { return m00 + m11; }
  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);

// The constant coin
//
//   C0 = [[ a,             b           ],
//         [ -e^{i delta} b*, e^{i delta} a* ]]
//
// with a = a_mod e^{i a_arg} and b = sqrt(1 - a_mod^2) e^{i b_arg}. |b| is
// always derived from a_mod so the matrix is unitary by construction.
class CoinSpec {
 public:
  CoinSpec() = default;

  double a_mod() const { return a_mod_; }
  double a_arg() const { return a_arg_; }
  double b_arg() const { return b_arg_; }
  double delta() const { return delta_; }
  double b_mod() const;

  cplx a() const { return std::polar(a_mod_, a_arg_); }
  cplx b() const { return std::polar(b_mod(), b_arg_); }
  Mat2 matrix() const;
  bool is_diagonal() const { return a_mod_ == 1.0; }

  friend bool operator==(const CoinSpec&, const CoinSpec&) = default;

 private:
  friend CoinSpec build_coin(double, double, double, double);
  double a_mod_ = 1.0;
  double a_arg_ = 0.0;
  double b_arg_ = 0.0;
  double delta_ = 0.0;
};

// Throws ValidationError on non-finite input or a_mod outside [0, 1] by more
// than 1e-12. Values within the slack are clamped; angles are reduced to [0, 2pi).
CoinSpec build_coin(double a_mod, double a_arg, double b_arg, double delta);

// The Hadamard coin (1/sqrt2)[[1,1],[1,-1]].
CoinSpec hadamard_coin();

// theta(x) = g (1+|x|)^{-gamma}; C(x) = e^{i theta(x)} C0.
struct PhaseProfile {
  double gamma = 1.0;
  double g = 1.0;

  friend bool operator==(const PhaseProfile&, const PhaseProfile&) = default;
};

// Throws ValidationError unless gamma > 0 and g in [0, 1].
PhaseProfile make_profile(double gamma, double g = 1.0);

double phase_at(const PhaseProfile& profile, std::int64_t x);

// ||C(x) - C0|| = |e^{i theta(x)} - 1| = 2 |sin(theta(x)/2)|.
double coin_difference_norm(const PhaseProfile& profile, std::int64_t x);

}  // namespace qwalk
