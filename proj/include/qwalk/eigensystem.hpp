#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/fourier.hpp"

namespace qwalk {

// Symbol of U0 at momentum k: diag(e^{ik}, e^{-ik}) C0.
Mat2 symbol(const CoinSpec& coin, double k);

// One spectral branch of the symbol sampled on a grid.
struct Branch {
  std::vector<cplx> lambda;   // unit-modulus eigenvalue
  std::vector<Spinor> u;      // normalized eigenvector, continuous gauge
  std::vector<double> v;      // group velocity i lambda'/lambda
};

// Closed-form eigen-decomposition of the symbol on every grid node.
//
// With psi(k) = k + arg a - delta/2 and
//   tau = |a| cos psi,  eta = sqrt(1 - tau^2),  zeta = |a| sin psi,
// the branches are
//   lambda_j = e^{i delta/2} (tau + i s_j eta),        s_1 = +1, s_2 = -1,
//   u_j      = (-i |b| e^{i(k + arg b - delta/2)}, s_j d_j) / sqrt(2 eta d_j),
//   d_j      = |b|^2 / (eta + s_j zeta)  ( = eta - s_j zeta ),
//   v_j      = -s_j zeta / eta.
// The determinant of the symbol is e^{i delta}, which fixes the e^{i delta/2}
// prefactor. For |a| = 1 (b = 0) the symbol is diagonal and the branches are
// taken as lambda_1 = a e^{ik}, u_1 = e1, v_1 = -1 and
// lambda_2 = a* e^{i delta} e^{-ik}, u_2 = e2, v_2 = +1.
struct EigenSystem {
  CoinSpec coin;
  KGrid grid;
  std::array<Branch, 2> branch;
  std::vector<double> tau, eta, zeta;
  bool diagonal = false;

  std::size_t size() const { return grid.n; }
};

EigenSystem eigensystem(const CoinSpec& coin, const KGrid& grid);

// v_j(k_m) for both branches.
std::array<std::vector<double>, 2> group_velocity(const EigenSystem& eig);

// Branch decomposition of the symbol reassembled: sum_j lambda_j <u_j, .> u_j.
Mat2 reconstruct_symbol(const EigenSystem& eig, std::size_t m);

// CSV rows "k,branch,re_lambda,im_lambda,v" with a header line.
void write_spectrum_csv(std::ostream& os, const EigenSystem& eig);

}  // namespace qwalk
