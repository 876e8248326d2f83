#include "qwalk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qwalk/errors.hpp"
#include "qwalk/fourier.hpp"
#include "qwalk/report_format.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

void DefectSeries::push(std::int64_t time, double v) {
  if (!t.empty() && time <= t.back()) throw std::logic_error("DefectSeries " + name + ": t must increase");
  if (!std::isfinite(v)) throw NumericalGuardError("DefectSeries " + name + ": non-finite value");
  t.push_back(time);
  value.push_back(v);
}

double DefectSeries::at(std::int64_t time) const {
  const auto it = std::lower_bound(t.begin(), t.end(), time);
  if (it == t.end() || *it != time) throw std::out_of_range("DefectSeries " + name + ": no entry at t");
  return value[static_cast<std::size_t>(it - t.begin())];
}

namespace {

// Window for `phi` that admits `steps` consecutive steps.
StateVector with_room(const StateVector& phi, std::int64_t steps) {
  return EvolutionPlan{steps, false, 1}.embed(phi);
}

StateVector wave_with(const StateVector& phi, const Propagator& free, const Propagator& pert, std::int64_t t) {
  StateVector psi = phi;
  free.advance(psi, t);
  pert.advance(psi, -t);
  return psi;
}

}  // namespace

StateVector wave_apply(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile, std::int64_t t) {
  const SiteInterval supp = support_bounds(phi);
  if (!phi.window().contains(supp.expanded(2 * std::abs(t)))) {
    throw WindowGuardError("wave_apply: window cannot hold 2|t| = " + std::to_string(2 * std::abs(t)) + " steps");
  }
  const Propagator free(coin, std::nullopt, phi.window());
  const Propagator pert(coin, profile, phi.window());
  return wave_with(phi, free, pert, t);
}

double cauchy_defect(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile, std::int64_t t1,
                     std::int64_t t2) {
  if (t1 < 0 || t2 < t1) throw ValidationError("cauchy_defect: need 0 <= t1 <= t2");
  if (t1 == t2) return 0.0;
  const StateVector base = with_room(phi, 2 * t2);
  const Propagator free(coin, std::nullopt, base.window());
  const Propagator pert(coin, profile, base.window());
  return distance(wave_with(base, free, pert, t2), wave_with(base, free, pert, t1));
}

DefectSeries defect_doublings(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile,
                              const std::vector<std::int64_t>& times) {
  DefectSeries out{"cauchy_defect", {}, {}};
  if (times.empty()) return out;
  const std::int64_t t_max = *std::max_element(times.begin(), times.end());
  const StateVector base = with_room(phi, 4 * t_max);
  const Propagator free(coin, std::nullopt, base.window());
  const Propagator pert(coin, profile, base.window());
  for (std::int64_t T : times) {
    if (T < 0) throw ValidationError("defect_doublings: negative time");
    out.push(T, distance(wave_with(base, free, pert, 2 * T), wave_with(base, free, pert, T)));
  }
  return out;
}

double telescoping_check(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile, std::int64_t t1,
                         std::int64_t t2) {
  if (t1 < 0 || t2 <= t1) throw ValidationError("telescoping_check: need 0 <= t1 < t2");
  const StateVector base = with_room(phi, 2 * t2);
  const Propagator free(coin, std::nullopt, base.window());
  const Propagator pert(coin, profile, base.window());

  const StateVector lhs = wave_with(base, free, pert, t2) - wave_with(base, free, pert, t1);

  // sum_t U^{-t} xi_t with xi_t = (U0 - U) U0^{t-1} phi in Horner form, walking
  // t downwards so that U0^{t-1} phi follows from one inverse free step.
  StateVector psi = base;
  free.advance(psi, t2 - 1);
  StateVector acc = pert.perturbation_difference(psi);
  for (std::int64_t t = t2 - 1; t > t1; --t) {
    free.advance(psi, -1);
    pert.advance(acc, -1);
    acc += pert.perturbation_difference(psi);
  }
  pert.advance(acc, -(t1 + 1));
  return distance(lhs, acc);
}

DivergenceSeries divergence_terms(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile,
                                  std::int64_t t_lo, std::int64_t t_hi) {
  if (t_lo < 1 || t_hi < t_lo) throw ValidationError("divergence_terms: need 1 <= t_lo <= t_hi");
  DivergenceSeries out;
  out.terms.name = "divergence_term";
  out.sin_form.name = "divergence_term_sin";
  out.partial_sums.name = "partial_sum";
  out.perturbation_norm.name = "perturbation_norm";

  StateVector psi = with_room(phi, t_hi);
  const Propagator free(coin, std::nullopt, psi.window());
  const Propagator pert(coin, profile, psi.window());
  free.advance(psi, t_lo - 1);
  const double scale = std::max(1.0, phi.norm_squared());
  double partial = 0.0;
  for (std::int64_t t = t_lo; t <= t_hi; ++t) {
    const StateVector xi = pert.perturbation_difference(psi);
    const double sn = perturbation_sin_sum(psi, profile);
    free.advance(psi, 1);
    const double ip = inner(xi, psi).imag();
    const double gap = std::abs(ip - sn);
    out.max_form_mismatch = std::max(out.max_form_mismatch, gap);
    if (gap > 1e-12 * scale) {
      std::ostringstream msg;
      msg << "divergence_terms: the two forms of term(" << t << ") differ by " << gap;
      throw NumericalGuardError(msg.str());
    }
    partial += ip;
    out.terms.push(t, ip);
    out.sin_form.push(t, sn);
    out.partial_sums.push(t, partial);
    out.perturbation_norm.push(t, xi.norm());
  }
  return out;
}

const char* model_name(GrowthFit::Model m) {
  switch (m) {
    case GrowthFit::Model::power: return "power";
    case GrowthFit::Model::logarithmic: return "logarithmic";
    case GrowthFit::Model::bounded: return "bounded";
  }
  return "unknown";
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  if (sxx <= 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

// Regressor of the offset power family: (T^p - 1)/p, log T at p = 0.
std::vector<double> box_cox(const std::vector<double>& logt, double p) {
  std::vector<double> x(logt.size());
  for (std::size_t i = 0; i < logt.size(); ++i) {
    x[i] = std::abs(p) < 1e-9 ? logt[i] : std::expm1(p * logt[i]) / p;
  }
  return x;
}

}  // namespace

GrowthFit fit_growth(const DefectSeries& series, std::int64_t burn_in) {
  std::vector<double> logt, y;
  GrowthFit fit;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.t[i] < burn_in) continue;
    if (series.t[i] <= 0) throw ValidationError("fit_growth: times must be positive after the burn-in");
    if (logt.empty()) fit.fit_t_lo = series.t[i];
    fit.fit_t_hi = series.t[i];
    logt.push_back(std::log(static_cast<double>(series.t[i])));
    y.push_back(series.value[i]);
  }
  if (y.size() < 16) {
    throw ValidationError("fit_growth: need at least 16 points after burn-in, have " + std::to_string(y.size()));
  }

  const double lo = *std::min_element(y.begin(), y.end());
  const double hi = *std::max_element(y.begin(), y.end());
  if (hi == lo) {
    fit.model = GrowthFit::Model::bounded;
    fit.offset = hi;
    fit.r_squared = 1.0;
    return fit;
  }

  const LineFit lg = fit_line(logt, y);
  fit.log_slope = lg.slope;
  fit.log_r_squared = lg.r_squared;
  if (lo > 0.0) {
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ly[i] = std::log(y[i]);
    const LineFit ll = fit_line(logt, ly);
    fit.loglog_exponent = ll.slope;
    fit.loglog_r_squared = ll.r_squared;
  }

  // Coarse scan of the exponent, then golden-section refinement around the best node.
  auto score = [&](double p) { return fit_line(box_cox(logt, p), y).r_squared; };
  constexpr double p_min = -3.0, p_max = 2.0, step = 0.01;
  double best_p = p_min, best_r = -1.0;
  for (int i = 0; p_min + i * step <= p_max + 1e-12; ++i) {
    const double p = p_min + i * step;
    const double r = score(p);
    if (r > best_r) {
      best_r = r;
      best_p = p;
    }
  }
  double a = best_p - step, b = best_p + step;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = score(c), fd = score(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = score(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = score(d);
    }
  }
  const double p = 0.5 * (a + b);
  const LineFit bc = fit_line(box_cox(logt, p), y);

  if (std::abs(p) < 0.05) {
    fit.model = GrowthFit::Model::logarithmic;
    fit.exponent = 0.0;
    fit.coefficient = lg.slope;
    fit.offset = lg.intercept;
    fit.r_squared = lg.r_squared;
    return fit;
  }
  // c (T^p - 1)/p + d = (c/p) T^p + (d - c/p).
  fit.model = p > 0.0 ? GrowthFit::Model::power : GrowthFit::Model::bounded;
  fit.exponent = p;
  fit.coefficient = bc.slope / p;
  fit.offset = bc.intercept - bc.slope / p;
  fit.r_squared = bc.r_squared;
  return fit;
}

WeakLimitResult weak_limit_compare(const StateVector& phi, const CoinSpec& coin, std::int64_t t, const KGrid& grid,
                                   double band) {
  if (t < 64) throw ValidationError("weak_limit_compare: need t >= 64");
  const double mass = phi.norm_squared();
  if (mass == 0.0) throw ValidationError("weak_limit_compare: zero state");

  struct Atom {
    double v;
    double emp;
    double spec;
  };
  std::vector<Atom> atoms;

  StateVector psi = with_room(phi, t);
  Propagator(coin, std::nullopt, psi.window()).advance(psi, t);
  WeakLimitResult out;
  out.min_velocity = std::numeric_limits<double>::infinity();
  out.max_velocity = -std::numeric_limits<double>::infinity();
  const double limit = coin.a_mod() + band;
  for (std::int64_t x = psi.window_lo(); x <= psi.window_hi(); ++x) {
    const double w = psi[x].norm_squared() / mass;
    if (w == 0.0) continue;
    const double v = static_cast<double>(x) / static_cast<double>(t);
    atoms.push_back({v, w, 0.0});
    if (std::abs(v) > limit) out.mass_outside += w;
    if (w > 1e-16) {
      out.min_velocity = std::min(out.min_velocity, v);
      out.max_velocity = std::max(out.max_velocity, v);
    }
  }

  const EigenSystem eig = eigensystem(coin, grid);
  const KFunction f = forward_dft(phi.padded(0), grid);
  const double n = static_cast<double>(grid.n);
  for (std::size_t m = 0; m < grid.n; ++m) {
    for (const Branch& br : eig.branch) {
      const double w = std::norm(dot(br.u[m], f[m])) / (n * mass);
      if (w > 0.0) atoms.push_back({br.v[m], 0.0, w});
    }
  }

  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.v < r.v; });
  double fe = 0.0, fs = 0.0;
  for (std::size_t i = 0; i < atoms.size();) {
    out.ks = std::max(out.ks, std::abs(fe - fs));  // left limit
    std::size_t j = i;
    for (; j < atoms.size() && atoms[j].v == atoms[i].v; ++j) {
      fe += atoms[j].emp;
      fs += atoms[j].spec;
    }
    out.ks = std::max(out.ks, std::abs(fe - fs));
    i = j;
  }
  return out;
}

std::vector<DefectSeries> LemmaReport::all_series() const {
  std::vector<DefectSeries> out;
  auto keep = [&](const DefectSeries& s) {
    if (!s.empty()) out.push_back(s);
  };
  keep(r1);
  for (const auto& s : r2) keep(s);
  keep(r3);
  keep(term);
  keep(perturbation_norm);
  keep(margin4);
  keep(margin5);
  return out;
}

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

namespace {

std::string z_label(cplx z) {
  std::ostringstream os;
  os << "lemma_r2[z=";
  if (z.real() != 0.0) os << format_double(z.real()) << (z.imag() >= 0.0 ? "+" : "");
  os << format_double(z.imag()) << "i]";
  return os.str();
}

// Forward U0^t s kept incrementally; heisenberg(f) returns U0^{-t} f(x/t) U0^t s.
class Conjugator {
 public:
  Conjugator(const StateVector& s, const Propagator& free) : free_(free), fwd_(s) {}

  void move_to(std::int64_t t) {
    free_.advance(fwd_, t - t_);
    t_ = t;
  }

  template <class F>
  StateVector heisenberg(F&& f) const {
    const double inv_t = 1.0 / static_cast<double>(t_);
    StateVector y = multiply_by_position(fwd_, [&](std::int64_t x) { return f(static_cast<double>(x) * inv_t); });
    free_.advance(y, -t_);
    return y;
  }

 private:
  const Propagator& free_;
  StateVector fwd_;
  std::int64_t t_ = 0;
};

// Nonnegative least squares for y ~ L1 a + L2 b.
std::pair<double, double> nnls2(const std::vector<double>& a, const std::vector<double>& b,
                                const std::vector<double>& y) {
  double saa = 0, sab = 0, sbb = 0, say = 0, sby = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    saa += a[i] * a[i];
    sab += a[i] * b[i];
    sbb += b[i] * b[i];
    say += a[i] * y[i];
    sby += b[i] * y[i];
  }
  auto residual = [&](double l1, double l2) {
    double r = 0;
    for (std::size_t i = 0; i < y.size(); ++i) r += std::pow(y[i] - l1 * a[i] - l2 * b[i], 2);
    return r;
  };
  const double det = saa * sbb - sab * sab;
  if (det > 1e-14 * saa * sbb) {
    const double l1 = (say * sbb - sby * sab) / det;
    const double l2 = (sby * saa - say * sab) / det;
    if (l1 >= 0.0 && l2 >= 0.0) return {l1, l2};
  }
  const double only1 = saa > 0 ? std::max(0.0, say / saa) : 0.0;
  const double only2 = sbb > 0 ? std::max(0.0, sby / sbb) : 0.0;
  return residual(only1, 0.0) <= residual(0.0, only2) ? std::pair{only1, 0.0} : std::pair{0.0, only2};
}

// G_eps(V0) phi on the support of phi padded by `pad`. The cutoff is smooth
// but not analytic, so the result decays only stretched-exponentially.
StateVector cutoff_of_V0(const StateVector& phi, const CoinSpec& coin, const FilterSpec& filter, std::int64_t pad,
                         const LemmaOptions& options) {
  const SiteInterval win = support_bounds(phi).expanded(pad);
  const StateVector phi_w = phi.rewindowed(win.lo, win.hi);
  const KGrid grid = KGrid::covering(win.width());
  return apply_function_of_V0([&](double s) { return cplx(filter.cutoff(s)); }, phi_w, eigensystem(coin, grid),
                              TailPolicy{options.cutoff_tail_tol, pad});
}

double reference_value(const DefectSeries& s, std::int64_t t_ref) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.t[i] >= t_ref) return static_cast<double>(s.t[i]) * s.value[i];
  }
  return 0.0;
}

}  // namespace

LemmaReport lemma_suite(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile,
                        const FilterSpec& filter, const std::vector<std::int64_t>& t_grid,
                        const std::vector<cplx>& z_grid, const LemmaOptions& options) {
  LemmaReport rep;
  rep.z_grid = z_grid;
  const double norm2 = phi.norm_squared();
  if (norm2 == 0.0) throw ValidationError("lemma_suite: zero state");
  std::vector<std::int64_t> times = t_grid;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (options.rates) {
    if (times.empty()) throw ValidationError("lemma_suite: empty t grid");
    if (times.front() < 1) throw ValidationError("lemma_suite: t grid must be positive");
  }
  for (cplx z : z_grid) {
    if (z.imag() == 0.0) throw ValidationError("lemma_suite: z must have nonzero imaginary part");
  }

  if (options.rates && !times.empty()) {
    const std::int64_t t_max = times.back();
    const SiteInterval supp = support_bounds(phi);
    const SiteInterval win = supp.expanded(2 * t_max + options.tail_pad);
    const KGrid grid = options.grid_n > 0 ? KGrid{options.grid_n} : KGrid::covering(win.width());
    rep.grid_n = grid.n;
    const EigenSystem eig = eigensystem(coin, grid);
    // Everything kept in the working window counts; only what falls outside is tail.
    const std::int64_t keep = 2 * t_max + options.tail_pad;
    const TailPolicy policy{options.tail_tol, keep};
    const Propagator free(coin, std::nullopt, win);

    const StateVector phi_w = phi.rewindowed(win.lo, win.hi);
    const StateVector v0phi = apply_V0(phi_w, eig, policy);
    const StateVector gphi = cutoff_of_V0(phi, coin, filter, std::max(keep, options.cutoff_pad), options);
    rep.g_eps_v0_norm = gphi.norm();

    struct Resolvent {
      StateVector psi, v0psi;
    };
    std::vector<Resolvent> res;
    for (cplx z : z_grid) {
      StateVector psi = trimmed(apply_resolvent_V0(z, phi_w, eig, policy), options.trim_tol);
      psi = psi.rewindowed(win.lo, win.hi);
      StateVector v0psi = apply_V0(psi, eig, policy);
      res.push_back({std::move(psi), std::move(v0psi)});
      rep.r2.push_back(DefectSeries{z_label(z), {}, {}});
    }

    rep.r1.name = "lemma_r1";
    rep.r3.name = "lemma_r3";
    Conjugator cphi(phi_w, free);
    std::vector<Conjugator> cres;
    for (const auto& r : res) cres.emplace_back(r.psi, free);
    const auto identity = [](double v) { return v; };
    const auto g_eps = [&](double v) { return filter.cutoff(v); };
    for (std::int64_t t : times) {
      cphi.move_to(t);
      rep.r1.push(t, distance(cphi.heisenberg(identity), v0phi));
      rep.r3.push(t, distance(cphi.heisenberg(g_eps), gphi));
      for (std::size_t i = 0; i < res.size(); ++i) {
        cres[i].move_to(t);
        rep.r2[i].push(t, distance(cres[i].heisenberg(identity), res[i].v0psi));
      }
    }

    const double floor = options.zero_floor;
    for (std::size_t i = 0; i < rep.r1.size(); ++i) {
      const double tt = static_cast<double>(rep.r1.t[i]);
      rep.kappa1 = std::max(rep.kappa1, tt * rep.r1.value[i]);
      rep.kappa2 = std::max(rep.kappa2, tt * rep.r3.value[i]);
    }
    const double ref1 = reference_value(rep.r1, options.reference_t);
    const double ref3 = reference_value(rep.r3, options.reference_t);
    for (std::size_t i = 0; i < rep.r1.size(); ++i) {
      if (rep.r1.t[i] < options.reference_t) continue;
      const double tt = static_cast<double>(rep.r1.t[i]);
      if (tt * rep.r1.value[i] > std::max(options.slack_velocity * ref1, floor)) rep.velocity_rate_ok = false;
      if (tt * rep.r3.value[i] > std::max(options.slack_cutoff * ref3, floor)) rep.cutoff_rate_ok = false;
    }

    std::vector<double> ra, rb, ry;
    for (std::size_t k = 0; k < rep.r2.size(); ++k) {
      const double im = std::abs(z_grid[k].imag());
      const double a = 1.0 / im, b = 1.0 / (im * im);
      const double ref = reference_value(rep.r2[k], options.reference_t);
      for (std::size_t i = 0; i < rep.r2[k].size(); ++i) {
        const double scaled = static_cast<double>(rep.r2[k].t[i]) * rep.r2[k].value[i];
        ra.push_back(a);
        rb.push_back(b);
        ry.push_back(scaled);
        rep.resolvent_rate = std::max(rep.resolvent_rate, scaled / (a + b));
        const bool small = scaled <= floor && ref <= floor;
        if (!small && (scaled > options.slack_resolvent * ref || scaled * options.slack_resolvent < ref)) rep.resolvent_rate_ok = false;
      }
    }
    if (!ry.empty()) std::tie(rep.L1, rep.L2) = nnls2(ra, rb, ry);
  }

  if (options.margins) {
    const std::int64_t hi = options.margin_t_hi > 0 ? options.margin_t_hi : (times.empty() ? 0 : times.back());
    if (hi < options.margin_t_lo || options.margin_t_lo < 1) {
      throw ValidationError("lemma_suite: margin range must satisfy 1 <= lo <= hi");
    }
    const DivergenceSeries div = divergence_terms(phi, coin, profile, options.margin_t_lo, hi);
    rep.term = div.terms;
    rep.term.name = "lemma_term";
    rep.perturbation_norm = div.perturbation_norm;
    rep.perturbation_norm.name = "lemma_perturbation_norm";
    if (!options.rates || times.empty()) {
      rep.g_eps_v0_norm = cutoff_of_V0(phi, coin, filter, options.cutoff_pad, options).norm();
    }

    const double shape = 0.5 * profile.g * (1.0 - coin.a_mod() * coin.a_mod()) * norm2;
    std::vector<double> lb(rep.term.size()), decay(rep.term.size());
    for (std::size_t i = 0; i < rep.term.size(); ++i) {
      const double t = static_cast<double>(rep.term.t[i]);
      decay[i] = std::pow(1.0 + 2.0 * t, -profile.gamma);
      lb[i] = shape * decay[i];
      rep.kappa3 = std::max(rep.kappa3, t * t * (lb[i] - rep.term.value[i]));
      rep.kappa4 =
          std::max(rep.kappa4, (rep.perturbation_norm.value[i] - 2.0 * rep.g_eps_v0_norm) / decay[i]);
    }
    rep.margin4.name = "lemma_margin4";
    rep.margin5.name = "lemma_margin5";
    const double tol = 1e-12 * std::max(1.0, norm2);
    for (std::size_t i = 0; i < rep.term.size(); ++i) {
      const double t = static_cast<double>(rep.term.t[i]);
      const double m4 = rep.term.value[i] - (lb[i] - rep.kappa3 / (t * t));
      const double m5 = rep.kappa4 * decay[i] + 2.0 * rep.g_eps_v0_norm - rep.perturbation_norm.value[i];
      rep.margin4.push(rep.term.t[i], m4);
      rep.margin5.push(rep.term.t[i], m5);
      if (m4 < -tol || m5 < -tol) rep.margins_ok = false;
    }
  }

  for (double c : {rep.kappa1, rep.kappa2, rep.kappa3, rep.kappa4, rep.L1, rep.L2, rep.resolvent_rate}) {
    if (!std::isfinite(c) || c < 0.0) throw NumericalGuardError("lemma_suite: fitted constant is negative or not finite");
  }
  return rep;
}

}  // namespace qwalk
