#include "qwalk/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qwalk/report_format.hpp"

namespace qwalk {

Mat2 symbol(const CoinSpec& coin, double k) {
  const Mat2 c0 = coin.matrix();
  const cplx ep = std::polar(1.0, k);
  const cplx em = std::conj(ep);
  return {ep * c0.m00, ep * c0.m01, em * c0.m10, em * c0.m11};
}

EigenSystem eigensystem(const CoinSpec& coin, const KGrid& grid) {
  EigenSystem e;
  e.coin = coin;
  e.grid = grid;
  e.diagonal = coin.is_diagonal();
  const std::size_t n = grid.n;
  e.tau.resize(n);
  e.eta.resize(n);
  e.zeta.resize(n);
  for (auto& br : e.branch) {
    br.lambda.resize(n);
    br.u.resize(n);
    br.v.resize(n);
  }

  const double amod = coin.a_mod();
  const double bmod = coin.b_mod();
  const double half_delta = 0.5 * coin.delta();
  const cplx half_phase = std::polar(1.0, half_delta);

  for (std::size_t m = 0; m < n; ++m) {
    const double k = grid.node(m);
    const double psi = k + coin.a_arg() - half_delta;
    const double tau = amod * std::cos(psi);
    const double zeta = amod * std::sin(psi);
    const double eta = std::sqrt(std::max(0.0, 1.0 - tau * tau));
    e.tau[m] = tau;
    e.eta[m] = eta;
    e.zeta[m] = zeta;

    if (e.diagonal) {
      e.branch[0].lambda[m] = coin.a() * std::polar(1.0, k);
      e.branch[0].u[m] = {1.0, 0.0};
      e.branch[0].v[m] = -1.0;
      e.branch[1].lambda[m] = std::conj(coin.a()) * std::polar(1.0, coin.delta() - k);
      e.branch[1].u[m] = {0.0, 1.0};
      e.branch[1].v[m] = 1.0;
      continue;
    }

    const cplx top = cplx(0.0, -bmod) * std::polar(1.0, k + coin.b_arg() - half_delta);
    for (int j = 0; j < 2; ++j) {
      const double s = j == 0 ? 1.0 : -1.0;
      const double d = bmod * bmod / (eta + s * zeta);
      const double scale = 1.0 / std::sqrt(2.0 * eta * d);
      Branch& br = e.branch[static_cast<std::size_t>(j)];
      br.lambda[m] = half_phase * cplx(tau, s * eta);
      br.u[m] = {scale * top, cplx(scale * s * d)};
      br.v[m] = -s * zeta / eta;
    }
  }
  return e;
}

std::array<std::vector<double>, 2> group_velocity(const EigenSystem& eig) {
  return {eig.branch[0].v, eig.branch[1].v};
}

Mat2 reconstruct_symbol(const EigenSystem& eig, std::size_t m) {
  Mat2 out{};
  for (const Branch& br : eig.branch) {
    const Spinor& u = br.u[m];
    const cplx l = br.lambda[m];
    out.m00 += l * u.up * std::conj(u.up);
    out.m01 += l * u.up * std::conj(u.down);
    out.m10 += l * u.down * std::conj(u.up);
    out.m11 += l * u.down * std::conj(u.down);
  }
  return out;
}

void write_spectrum_csv(std::ostream& os, const EigenSystem& eig) {
  os << "k,branch,re_lambda,im_lambda,v\n";
  for (std::size_t m = 0; m < eig.size(); ++m) {
    for (int j = 0; j < 2; ++j) {
      const Branch& br = eig.branch[static_cast<std::size_t>(j)];
      os << format_double(eig.grid.node(m)) << ',' << (j + 1) << ',' << format_double(br.lambda[m].real()) << ','
         << format_double(br.lambda[m].imag()) << ',' << format_double(br.v[m]) << '\n';
    }
  }
}

}  // namespace qwalk
