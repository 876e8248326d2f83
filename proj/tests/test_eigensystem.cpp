#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qwalk/eigensystem.hpp"
#include "qwalk/velocity.hpp"
#include "support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

constexpr double pi = std::numbers::pi;

double mat_dist(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                   std::abs(a.m11 - b.m11)});
}

double wrap(double x) {
  x = std::fmod(x, 2 * pi);
  if (x > pi) x -= 2 * pi;
  if (x < -pi) x += 2 * pi;
  return x;
}

}  // namespace

TEST_CASE("eigenpairs solve the symbol and reassemble it") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const CoinSpec c = random_coin(rng);
    const EigenSystem e = eigensystem(c, KGrid{64});
    for (std::size_t m = 0; m < 64; ++m) {
      const Mat2 s = symbol(c, e.grid.node(m));
      for (const auto& br : e.branch) {
        CHECK(std::abs(std::abs(br.lambda[m]) - 1.0) < 1e-13);
        CHECK(br.u[m].norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
        const Spinor r = s * br.u[m] - br.lambda[m] * br.u[m];
        CHECK(std::sqrt(r.norm_squared()) < 1e-12);
      }
      CHECK(std::abs(dot(e.branch[0].u[m], e.branch[1].u[m])) < 1e-12);
      CHECK(mat_dist(reconstruct_symbol(e, m), s) < 1e-12);
    }
  }
}

TEST_CASE("closed form against a numerical eigensolver") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const CoinSpec c = random_generic_coin(rng);
    const EigenSystem e = eigensystem(c, KGrid{128});
    for (std::size_t m = 0; m < 128; ++m) {
      const Mat2 s = symbol(c, e.grid.node(m));
      Eigen::Matrix2cd M;
      M << s.m00, s.m01, s.m10, s.m11;
      const Eigen::Vector2cd ev = Eigen::ComplexEigenSolver<Eigen::Matrix2cd>(M).eigenvalues();
      const cplx l1 = e.branch[0].lambda[m], l2 = e.branch[1].lambda[m];
      const double err = std::min(std::max(std::abs(l1 - ev(0)), std::abs(l2 - ev(1))),
                                  std::max(std::abs(l1 - ev(1)), std::abs(l2 - ev(0))));
      CHECK(err < 1e-12);
    }
  }
}

TEST_CASE("determinant and trace fix the e^{i delta/2} prefactor") {
  const CoinSpec c = build_coin(0.4, 0.2, 0.9, 1.7);
  const EigenSystem e = eigensystem(c, KGrid{32});
  for (std::size_t m = 0; m < 32; ++m) {
    const cplx l1 = e.branch[0].lambda[m], l2 = e.branch[1].lambda[m];
    CHECK(std::abs(l1 * l2 - std::polar(1.0, 1.7)) < 1e-14);
    CHECK(std::abs(l1 + l2 - 2.0 * e.tau[m] * std::polar(1.0, 0.85)) < 1e-14);
  }
}

TEST_CASE("group velocity matches finite differences of the eigenphase") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const CoinSpec c = random_generic_coin(rng);
    double prev_c = -1;
    for (std::size_t n : {256u, 512u, 1024u}) {
      const EigenSystem e = eigensystem(c, KGrid{n});
      const double h = e.grid.spacing();
      double worst = 0;
      for (std::size_t m = 0; m < n; ++m) {
        const std::size_t mp = (m + 1) % n, mm = (m + n - 1) % n;
        for (const auto& br : e.branch) {
          // v = i lambda'/lambda = -d arg(lambda)/dk.
          const double fd = -wrap(std::arg(br.lambda[mp]) - std::arg(br.lambda[mm])) / (2 * h);
          worst = std::max(worst, std::abs(fd - br.v[m]));
        }
      }
      const double cst = worst / (h * h);
      if (prev_c > 0) CHECK(cst == doctest::Approx(prev_c).epsilon(0.05));
      prev_c = cst;
    }
  }
}

TEST_CASE("velocities stay in [-|a|, |a|]") {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const CoinSpec c = random_coin(rng);
    const auto v = group_velocity(eigensystem(c, KGrid{256}));
    for (const auto& br : v) {
      for (double x : br) CHECK(std::abs(x) <= c.a_mod() + 1e-12);
    }
  }
}

TEST_CASE("diagonal coin branches") {
  const CoinSpec c = build_coin(1.0, 0.3, 0.0, 0.8);
  const EigenSystem e = eigensystem(c, KGrid{16});
  CHECK(e.diagonal);
  for (std::size_t m = 0; m < 16; ++m) {
    const double k = e.grid.node(m);
    CHECK(std::abs(e.branch[0].lambda[m] - std::polar(1.0, 0.3 + k)) < 1e-14);
    CHECK(std::abs(e.branch[1].lambda[m] - std::polar(1.0, 0.8 - 0.3 - k)) < 1e-14);
    CHECK(e.branch[0].v[m] == -1.0);
    CHECK(e.branch[1].v[m] == 1.0);
    CHECK(e.branch[0].u[m] == Spinor{1.0, 0.0});
  }
}

TEST_CASE("a = 0 gives two eigenvalues and zero velocity") {
  const CoinSpec c = build_coin(0.0, 0.0, 0.4, 1.0);
  const EigenSystem e = eigensystem(c, KGrid{16});
  for (std::size_t m = 0; m < 16; ++m) {
    CHECK(std::abs(e.branch[0].lambda[m] - cplx(0, 1) * std::polar(1.0, 0.5)) < 1e-14);
    CHECK(std::abs(e.branch[1].lambda[m] + cplx(0, 1) * std::polar(1.0, 0.5)) < 1e-14);
    CHECK(e.branch[0].v[m] == doctest::Approx(0.0));
  }
}

TEST_CASE("eigenvectors are continuous in k") {
  const CoinSpec c = hadamard_coin();
  const EigenSystem e = eigensystem(c, KGrid{1024});
  for (std::size_t m = 0; m < 1024; ++m) {
    const std::size_t next = (m + 1) % 1024;
    for (const auto& br : e.branch) {
      CHECK(std::sqrt((br.u[next] - br.u[m]).norm_squared()) < 0.05);
    }
  }
}

TEST_CASE("spectrum csv") {
  std::ostringstream os;
  write_spectrum_csv(os, eigensystem(hadamard_coin(), KGrid{8}));
  const std::string s = os.str();
  CHECK(s.rfind("k,branch,re_lambda,im_lambda,v\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 17);
}

TEST_CASE("spectrum arcs") {
  const SpectrumSummary h = u0_spectrum(hadamard_coin(), KGrid{1024});
  CHECK(h.arcs.size() == 2);
  CHECK(h.gap_half_width == doctest::Approx(pi / 4));
  CHECK(h.measured_gap_half_width == doctest::Approx(pi / 4).epsilon(1e-9));
  CHECK(h.gap_centers[0] == doctest::Approx(pi / 2));
  for (const Arc& a : h.arcs) CHECK(a.length == doctest::Approx(pi / 2));

  const SpectrumSummary full = u0_spectrum(build_coin(1.0, 0, 0, 0), KGrid{1024});
  CHECK(full.max_sample_gap <= 2 * pi / 1024 + 1e-12);
  CHECK(full.gap_half_width == 0.0);

  const SpectrumSummary two = u0_spectrum(build_coin(0.0, 0, 0, 0.6), KGrid{64});
  for (const Arc& a : two.arcs) CHECK(a.length == doctest::Approx(0.0));
}
