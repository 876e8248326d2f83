// Acceptance run: one PASS/FAIL line per criterion.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/diagnostics.hpp"
#include "qwalk/eigensystem.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/velocity.hpp"
#include "qwalk/walk.hpp"
#include "support.hpp"

using namespace qwalk;
using namespace qwalk::testing;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StateVector single_site() { return StateVector::single_site(0, chiral_spinor(), 0, 0); }

StateVector filtered_seed(double a_mod = 1.0 / std::numbers::sqrt2) {
  ExperimentConfig cfg;
  cfg.a_mod = a_mod;
  return make_seed(cfg);
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (std::int64_t t = lo; t <= hi; ++t) v.push_back(t);
  return v;
}

Outcome exactness_core() {
  Outcome o;
  Rng rng(20240601);
  const auto t0 = std::chrono::steady_clock::now();
  double worst_norm = 0, worst_trip = 0, worst_window = 0;
  bool cone = true;
  for (int trial = 0; trial < 200; ++trial) {
    const CoinSpec coin = random_coin(rng);
    std::optional<PhaseProfile> profile;
    if (trial % 2) profile = make_profile(uniform(rng, 0.2, 2.5), uniform(rng, 0.0, 1.0));
    const std::int64_t w = uniform_int(rng, 1, 16);
    const std::int64_t t = uniform_int(rng, 1, 512);
    const StateVector phi = random_state(rng, 0, w - 1, 0, w - 1);
    const SiteInterval supp = support_bounds(phi);

    // Tight window: the light cone exactly.
    StateVector psi = phi.rewindowed(-t, w - 1 + t);
    Propagator(coin, profile, psi.window()).advance(psi, t);
    worst_norm = std::max(worst_norm, std::abs(psi.norm() - phi.norm()));
    cone &= supp.expanded(t).contains(support_bounds(psi));

    // The same evolution on a much wider window must agree bit for bit.
    StateVector wide = phi.rewindowed(-t - 64, w - 1 + t + 64);
    Propagator(coin, profile, wide.window()).advance(wide, t);
    worst_window = std::max(worst_window, distance(psi, wide));

    StateVector trip = phi.rewindowed(-2 * t, w - 1 + 2 * t);
    const Propagator p2(coin, profile, trip.window());
    p2.advance(trip, t);
    p2.advance(trip, -t);
    worst_trip = std::max(worst_trip, distance(trip, phi));
  }
  const double secs = seconds_since(t0);
  o.require(worst_norm <= 1e-12, "unitarity");
  o.require(worst_trip <= 1e-12, "round trip");
  o.require(cone && worst_window == 0.0, "light cone");
  o.require(secs < 30.0, "runtime");
  o.note("200 pairs, max |norm drift| " + fmt("%.2e", worst_norm) + ", max round-trip error " + fmt("%.2e", worst_trip) +
         ", window-independence " + fmt("%.1e", worst_window) + ", " + fmt("%.1f s", secs));
  return o;
}

Outcome eigensystem_oracle() {
  Outcome o;
  Rng rng(777);
  const KGrid grid{1024};
  double worst_val = 0, worst_proj = 0, worst_det = 0, worst_trace = 0;
  std::size_t degenerate = 0;
  for (int c = 0; c < 20; ++c) {
    const CoinSpec coin = random_coin(rng);
    const EigenSystem eig = eigensystem(coin, grid);
    const cplx half = std::polar(1.0, 0.5 * coin.delta());
    for (std::size_t m = 0; m < grid.n; ++m) {
      const Mat2 s = symbol(coin, grid.node(m));
      Eigen::Matrix2cd M;
      M << s.m00, s.m01, s.m10, s.m11;
      Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(M);
      const auto& ev = es.eigenvalues();
      const cplx l1 = eig.branch[0].lambda[m], l2 = eig.branch[1].lambda[m];
      const double direct = std::max(std::abs(l1 - ev(0)), std::abs(l2 - ev(1)));
      const double swapped = std::max(std::abs(l1 - ev(1)), std::abs(l2 - ev(0)));
      const bool swap = swapped < direct;
      worst_val = std::max(worst_val, std::min(direct, swapped));
      worst_det = std::max(worst_det, std::abs(l1 * l2 - std::polar(1.0, coin.delta())));
      worst_trace = std::max(worst_trace, std::abs(l1 + l2 - 2.0 * eig.tau[m] * half));
      if (std::abs(l1 - l2) < 1e-6) {
        ++degenerate;
        continue;
      }
      for (int j = 0; j < 2; ++j) {
        const Spinor& u = eig.branch[static_cast<std::size_t>(j)].u[m];
        Eigen::Vector2cd uc(u.up, u.down);
        Eigen::Vector2cd ve = es.eigenvectors().col(swap ? 1 - j : j).normalized();
        const Eigen::Matrix2cd diff = uc * uc.adjoint() - ve * ve.adjoint();
        worst_proj = std::max(worst_proj, diff.cwiseAbs().maxCoeff());
      }
    }
  }
  o.require(worst_val <= 1e-10, "eigenvalues");
  o.require(worst_proj <= 1e-10, "projections");
  o.require(worst_det <= 1e-10, "lambda1 lambda2 = e^{i delta}");
  o.require(worst_trace <= 1e-10, "trace = 2 tau e^{i delta/2}");
  o.note("20 coins x 1024 nodes: eigenvalues " + fmt("%.1e", worst_val) + ", projections " + fmt("%.1e", worst_proj) +
         ", det " + fmt("%.1e", worst_det) + ", trace " + fmt("%.1e", worst_trace) + " (" +
         std::to_string(degenerate) + " degenerate nodes skip projections)");
  return o;
}

Outcome spectrum_shape() {
  Outcome o;
  Rng rng(99);
  const KGrid grid{1024};
  double worst_gap = 0;
  for (int i = 0; i < 4; ++i) {
    const CoinSpec c = build_coin(1.0, uniform(rng, 0, 2 * pi), 0.0, uniform(rng, 0, 2 * pi));
    worst_gap = std::max(worst_gap, u0_spectrum(c, grid).max_sample_gap);
  }
  o.require(worst_gap <= 2 * pi / 1024 + 1e-12, "dense circle for |a| = 1");

  double worst_point = 0;
  for (int i = 0; i < 8; ++i) {
    const double delta = uniform(rng, 0, 2 * pi);
    const CoinSpec c = build_coin(0.0, uniform(rng, 0, 2 * pi), uniform(rng, 0, 2 * pi), delta);
    const EigenSystem eig = eigensystem(c, grid);
    const cplx p = cplx(0, 1) * std::polar(1.0, 0.5 * delta);
    for (const auto& br : eig.branch) {
      for (cplx l : br.lambda) worst_point = std::max(worst_point, std::min(std::abs(l - p), std::abs(l + p)));
    }
  }
  o.require(worst_point <= 1e-12, "a = 0 spectrum {+-i e^{i delta/2}}");

  const SpectrumSummary h = u0_spectrum(hadamard_coin(), grid);
  const double err = std::abs(h.measured_gap_half_width - pi / 4);
  o.require(err <= 1e-6, "Hadamard gap half-width");
  o.note("max sample gap " + fmt("%.6f", worst_gap) + " (2pi/1024 = " + fmt("%.6f", 2 * pi / 1024) +
         "), a=0 deviation " + fmt("%.1e", worst_point) + ", Hadamard gap half-width " +
         fmt("%.9f", h.measured_gap_half_width) + " vs pi/4");
  return o;
}

Outcome telescoping() {
  Outcome o;
  double worst = 0;
  const StateVector seeds[] = {filtered_seed(), single_site()};
  for (double gamma : {0.5, 1.5}) {
    for (const auto& phi : seeds) {
      worst = std::max(worst, telescoping_check(phi, hadamard_coin(), make_profile(gamma), 0, 200));
    }
  }
  o.require(worst <= 1e-9, "telescoping residual");
  o.note("max residual " + fmt("%.2e", worst) + " over gamma {0.5, 1.5} x {filtered, single-site}, (t1, t2) = (0, 200)");
  return o;
}

double scaled_at(const DefectSeries& s, std::size_t i) { return static_cast<double>(s.t[i]) * s.value[i]; }

Outcome velocity_rate() {
  Outcome o;
  LemmaOptions opt;
  opt.margins = false;
  const CoinSpec h = hadamard_coin();
  const LemmaReport rep = lemma_suite(single_site(), h, make_profile(0.5), make_filter(0.1, h), range(2, 256), {}, opt);
  const double ref = static_cast<double>(16) * rep.r1.at(16);
  double later = 0;
  bool finite = true;
  for (std::size_t i = 0; i < rep.r1.size(); ++i) {
    finite &= std::isfinite(rep.r1.value[i]);
    if (rep.r1.t[i] >= 16) later = std::max(later, scaled_at(rep.r1, i));
  }
  o.require(finite && later <= 1.5 * ref, "t r1 bound from t = 16");

  const CoinSpec diag = build_coin(1.0, 0.0, 0.0, 0.0);
  const StateVector up = StateVector::single_site(0, Spinor{1.0, 0.0}, 0, 0);
  const LemmaReport d = lemma_suite(up, diag, make_profile(0.5), make_filter(0.1, diag), range(2, 256), {}, opt);
  const double dmax = *std::max_element(d.r1.value.begin(), d.r1.value.end());
  o.require(dmax <= 1e-12, "diagonal coin residual");
  o.note("Hadamard single-site: kappa1 = sup t r1 = " + fmt("%.4f", rep.kappa1) + ", t r1 at 16 = " + fmt("%.4f", ref) +
         ", max over t >= 16 = " + fmt("%.4f", later) + "; diagonal max r1 " + fmt("%.1e", dmax));
  return o;
}

Outcome resolvent_and_cutoff_rates() {
  Outcome o;
  const CoinSpec h = hadamard_coin();
  const std::vector<cplx> zs{{0, 0.25}, {0, 0.5}, {0, 1}, {0, 2}};
  LemmaOptions opt;
  opt.margins = false;
  const LemmaReport f = lemma_suite(filtered_seed(), h, make_profile(0.5), make_filter(0.1, h), range(2, 256), zs, opt);
  const LemmaReport s = lemma_suite(single_site(), h, make_profile(0.5), make_filter(0.1, h), range(2, 256), zs, opt);

  auto band = [](const DefectSeries& r) {
    const double ref = 16.0 * r.at(16);
    double lo = INFINITY, hi = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      lo = std::min(lo, scaled_at(r, i) / ref);
      hi = std::max(hi, scaled_at(r, i) / ref);
    }
    return std::pair{lo, hi};
  };
  std::string r2txt;
  for (const auto* rep : {&f, &s}) {
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const auto [lo, hi] = band(rep->r2[k]);
      o.require(lo >= 0.5 && hi <= 2.0, rep->r2[k].name + (rep == &f ? " (filtered)" : " (single-site)"));
      if (rep == &f) r2txt += fmt(" %.3f", lo) + fmt("..%.3f", hi);
    }
  }
  const double ref3 = 16.0 * f.r3.at(16);
  double later3 = 0;
  for (std::size_t i = 0; i < f.r3.size(); ++i) {
    if (f.r3.t[i] >= 16) later3 = std::max(later3, scaled_at(f.r3, i));
  }
  o.require(later3 <= 2.0 * ref3, "t r3 bound from t = 16 (filtered)");
  o.note("filtered seed t r2 / (t r2 at 16) ranges per z {0.25i,0.5i,i,2i}:" + r2txt + "; L1 " + fmt("%.3f", f.L1) +
         ", L2 " + fmt("%.3f", f.L2) + "; t r3 at 16 " + fmt("%.3g", ref3) + ", max later " + fmt("%.3g", later3) +
         ", kappa2 " + fmt("%.3g", f.kappa2) + "; single-site t r3 (pre-asymptotic, not scored) reaches " +
         fmt("%.1f", s.kappa2) + " at t = 256");
  return o;
}

Outcome divergence_margins() {
  Outcome o;
  const CoinSpec h = hadamard_coin();
  const StateVector phi = filtered_seed();
  std::string txt;
  double worst_g = 0;
  for (double gamma : {0.25, 0.5, 0.75, 1.0}) {
    LemmaOptions opt;
    opt.rates = false;
    opt.margin_t_lo = 4;
    opt.margin_t_hi = 256;
    const LemmaReport a = lemma_suite(phi, h, make_profile(gamma), make_filter(0.1, h), {}, {}, opt);
    opt.margin_t_hi = 512;
    const LemmaReport b = lemma_suite(phi, h, make_profile(gamma), make_filter(0.1, h), {}, {}, opt);
    bool nonneg = true;
    for (double m : a.margin4.value) nonneg &= m >= 0.0;
    for (double m : a.margin5.value) nonneg &= m >= 0.0;
    const double c3 = relative_change(a.kappa3, b.kappa3), c4 = relative_change(a.kappa4, b.kappa4);
    const std::string g = fmt("gamma %.2f", gamma);
    o.require(nonneg && a.margins_ok, g + " margins");
    o.require(c3 <= 0.2 && c4 <= 0.2, g + " constant stability");
    worst_g = std::max(worst_g, 2.0 * a.g_eps_v0_norm);
    txt += "; " + g + ": kappa3 " + fmt("%.3g", a.kappa3) + "->" + fmt("%.3g", b.kappa3) + ", kappa4 " +
           fmt("%.4f", a.kappa4) + "->" + fmt("%.4f", b.kappa4);
  }
  o.require(worst_g <= 1e-10, "2||G_eps(V0) phi|| <= 1e-10");
  o.note("filtered seed, t in [4,256] vs [4,512], 2||G_eps(V0) phi|| = " + fmt("%.1e", worst_g) + txt);
  return o;
}

const CellResult* find_cell(const ExperimentResult& r, double gamma) {
  for (const auto& c : r.cells) {
    if (c.gamma == gamma) return &c;
  }
  return nullptr;
}

void check_sweep(Outcome& o, const ExperimentResult& r, const std::string& label, bool strict_exponents) {
  for (const auto& c : r.cells) {
    const std::string g = label + fmt(" gamma %.2f", c.gamma);
    if (c.verdict == Verdict::failed) {
      o.require(false, g + " (" + c.error + ")");
      continue;
    }
    const auto& fit = c.evidence.fit;
    if (c.gamma < 1.0) {
      o.require(c.verdict == Verdict::divergent && fit.model == GrowthFit::Model::power, g + " DIVERGENT/power");
      if (strict_exponents) o.require(std::abs(fit.exponent - (1.0 - c.gamma)) <= 0.1, g + " exponent 1-gamma");
    } else if (c.gamma == 1.0) {
      o.require(c.verdict == Verdict::divergent && fit.model == GrowthFit::Model::logarithmic &&
                    fit.r_squared >= 0.99,
                g + " DIVERGENT/log R2 >= 0.99");
    } else {
      o.require(c.verdict == Verdict::convergent, g + " CONVERGENT");
      o.require(c.evidence.defect_ratio <= 0.1,
                g + " defect(256,512) <= 0.1 defect(32,64) [ratio " + fmt("%.3f", c.evidence.defect_ratio) + "]");
    }
  }
}

std::string sweep_digest(const ExperimentResult& r) {
  std::string s;
  for (const auto& c : r.cells) {
    s += fmt(" [%.2f ", c.gamma) + verdict_name(c.verdict);
    if (c.verdict != Verdict::failed) {
      s += std::string(" ") + model_name(c.evidence.fit.model) + fmt(" p=%.3f", c.evidence.fit.exponent) +
           fmt(" R2=%.4f", c.evidence.fit.r_squared) + fmt(" ratio=%.3f", c.evidence.defect_ratio);
    }
    s += "]";
  }
  return s;
}

ExperimentResult hadamard_sweep_result;
fs::path hadamard_dir;

Outcome dichotomy(const fs::path& base) {
  Outcome o;
  ExperimentConfig cfg;
  hadamard_dir = base / "sweep_hadamard";
  cfg.out_dir = hadamard_dir.string();
  fs::remove_all(hadamard_dir);
  const auto t0 = std::chrono::steady_clock::now();
  hadamard_sweep_result = run_experiment(cfg);
  const double secs = seconds_since(t0);
  check_sweep(o, hadamard_sweep_result, "Hadamard", true);
  o.require(secs <= 300.0, "runtime");

  ExperimentConfig diag = cfg;
  diag.a_mod = 1.0;
  diag.out_dir = (base / "sweep_diagonal").string();
  const ExperimentResult d = run_experiment(diag);
  check_sweep(o, d, "diagonal", false);

  // Diagonal coin, single site: U0^{t-1} phi sits at +-(t-1), so term(t) = sin((1+|t-1|)^{-gamma}).
  double worst = 0;
  const CoinSpec dc = build_coin(1.0, 0.0, 0.0, 0.0);
  for (double gamma : cfg.gamma) {
    const DivergenceSeries s = divergence_terms(single_site(), dc, make_profile(gamma), 1, 512);
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      const double t = static_cast<double>(s.terms.t[i]);
      worst = std::max(worst, std::abs(s.terms.value[i] - std::sin(std::pow(1.0 + std::abs(t - 1.0), -gamma))));
    }
  }
  o.require(worst <= 1e-12, "diagonal closed form");
  o.note("Hadamard:" + sweep_digest(hadamard_sweep_result) + fmt("; sweep %.1f s", secs) + "; diagonal:" +
         sweep_digest(d) + "; diagonal closed-form deviation " + fmt("%.1e", worst));
  return o;
}

Outcome weak_limit() {
  Outcome o;
  const KGrid grid{8192};
  const WeakLimitResult w64 = weak_limit_compare(single_site(), hadamard_coin(), 64, grid);
  const WeakLimitResult w512 = weak_limit_compare(single_site(), hadamard_coin(), 512, grid);
  o.require(w512.ks <= 0.05, "KS(512) <= 0.05");
  o.require(w512.ks < w64.ks, "KS(512) < KS(64)");
  o.require(w512.mass_outside <= 1e-8, "mass outside the velocity band");
  o.note("KS(64) " + fmt("%.4f", w64.ks) + ", KS(512) " + fmt("%.4f", w512.ks) + ", mass outside [-|a|-0.05, |a|+0.05] " +
         fmt("%.1e", w512.mass_outside) + ", velocities carrying > 1e-16 of the mass in [" +
         fmt("%.3f", w512.min_velocity) + ", " + fmt("%.3f", w512.max_velocity) + "]");
  return o;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

Outcome determinism(const fs::path& base) {
  Outcome o;
  ExperimentConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency()) + 1;
  const fs::path dir = base / "sweep_hadamard_repeat";
  fs::remove_all(dir);
  cfg.out_dir = dir.string();
  run_experiment(cfg);
  const auto a = read_dir(hadamard_dir), b = read_dir(dir);
  bool same = a.size() == b.size();
  for (const auto& [name, text] : a) {
    const auto it = b.find(name);
    same &= it != b.end() && it->second == text;
  }
  o.require(same && !a.empty(), "byte-identical record files");
  o.note(std::to_string(a.size()) + " files compared between a default-thread run and a " +
         std::to_string(cfg.threads) + "-thread run");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path base = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "qwalk_acceptance";
  fs::create_directories(base);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exactness core (unitarity, round trip, light cone)", exactness_core},
      {"eigensystem oracle", eigensystem_oracle},
      {"spectrum arcs and gaps", spectrum_shape},
      {"telescoping identity", telescoping},
      {"Heisenberg velocity rate", velocity_rate},
      {"resolvent and cutoff rates", resolvent_and_cutoff_rates},
      {"divergence-term and perturbation margins", divergence_margins},
      {"long/short range dichotomy", [&] { return dichotomy(base); }},
      {"weak limit of x/t", weak_limit},
      {"determinism", [&] { return determinism(base); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
