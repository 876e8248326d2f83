#include "qwalk/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

double circular_distance(double a, double b) {
  const double d = std::abs(wrap_phase(a) - wrap_phase(b));
  return std::min(d, two_pi - d);
}

}  // namespace

StateVector apply_branch_multiplier(const StateVector& state, const EigenSystem& eig,
                                    const std::function<cplx(int, std::size_t)>& mult, const TailPolicy& policy) {
  const SiteInterval supp = support_bounds(state);
  StateVector out(state.window_lo(), state.window_hi());
  if (supp.empty()) return out;

  const KFunction f = forward_dft(state, eig.grid);
  KFunction g(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    Spinor acc{};
    for (int j = 0; j < 2; ++j) {
      const Spinor& u = eig.branch[static_cast<std::size_t>(j)].u[m];
      const cplx w = mult(j, m);
      if (w == 0.0) continue;
      acc = acc + (w * dot(u, f[m])) * u;
    }
    g[m] = acc;
  }
  const std::vector<Spinor> period = inverse_dft_period(g);

  const auto n = static_cast<std::int64_t>(period.size());
  const std::int64_t free_room = std::max<std::int64_t>(0, n - supp.width());
  const std::int64_t pad = policy.pad >= 0 ? policy.pad : std::max<std::int64_t>(1, free_room / 4);
  // Each residue is attributed to the site closest to the support centre.
  const std::int64_t centre = supp.lo + (supp.hi - supp.lo) / 2;
  const std::int64_t first = centre - n / 2;
  double tail = 0.0;
  for (std::int64_t x = first; x < first + n; ++x) {
    std::int64_t r = x % n;
    if (r < 0) r += n;
    const Spinor& s = period[static_cast<std::size_t>(r)];
    const std::int64_t dist = std::max<std::int64_t>({0, supp.lo - x, x - supp.hi});
    if (dist > pad || !out.in_window(x)) {
      tail += s.norm_squared();
    } else {
      out[x] = s;
    }
  }
  const double in_norm = state.norm();
  if (std::sqrt(tail) > policy.tol * in_norm) {
    std::ostringstream msg;
    msg << "spectral multiplier: tail norm " << std::sqrt(tail) << " exceeds " << policy.tol << " x input norm "
        << in_norm << " (grid " << n << ", window width " << state.width() << ")";
    throw TailToleranceError(msg.str());
  }
  return out;
}

StateVector apply_V0(const StateVector& state, const EigenSystem& eig, const TailPolicy& policy) {
  return apply_branch_multiplier(
      state, eig, [&](int j, std::size_t m) { return cplx(eig.branch[static_cast<std::size_t>(j)].v[m]); }, policy);
}

StateVector apply_function_of_V0(const std::function<cplx(double)>& g, const StateVector& state, const EigenSystem& eig,
                                 const TailPolicy& policy) {
  return apply_branch_multiplier(
      state, eig, [&](int j, std::size_t m) { return g(eig.branch[static_cast<std::size_t>(j)].v[m]); }, policy);
}

StateVector apply_resolvent_V0(cplx z, const StateVector& state, const EigenSystem& eig, const TailPolicy& policy) {
  if (z.imag() == 0.0) throw ValidationError("apply_resolvent_V0: Im z must be nonzero");
  return apply_function_of_V0([z](double v) { return 1.0 / (z - v); }, state, eig, policy);
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double f0 = std::exp(-1.0 / u);
  const double f1 = std::exp(-1.0 / (1.0 - u));
  return f0 / (f0 + f1);
}

double FilterSpec::cutoff(double s) const { return 1.0 - smooth_step((std::abs(s) - 2.0 * eps) / eps); }

double FilterSpec::pass(double v) const { return smooth_step((std::abs(v) - 3.0 * eps) / eps); }

FilterSpec make_filter(double eps, const CoinSpec& coin) {
  if (!std::isfinite(eps) || eps <= 0.0 || eps >= coin.a_mod() / 6.0) {
    std::ostringstream msg;
    msg << "filter: eps = " << eps << " must satisfy 0 < eps < |a|/6 = " << coin.a_mod() / 6.0;
    throw ValidationError(msg.str());
  }
  return FilterSpec{eps};
}

StateVector velocity_filter(const StateVector& state, const FilterSpec& filter, const EigenSystem& eig,
                            const TailPolicy& policy) {
  const double in_norm = state.norm();
  if (in_norm == 0.0) throw ValidationError("velocity_filter: input state is zero");
  StateVector out = apply_function_of_V0([&](double v) { return filter.pass(v); }, state, eig, policy);
  if (out.norm() < 1e-8 * in_norm) {
    throw FilterAnnihilationError("velocity_filter: state has no spectral content with |v| >= 3 eps");
  }
  return out;
}

SpectrumSummary u0_spectrum(const CoinSpec& coin, const KGrid& grid) {
  SpectrumSummary s;
  const double theta = std::acos(std::clamp(coin.a_mod(), 0.0, 1.0));
  const double c0 = 0.5 * coin.delta();
  s.gap_half_width = theta;
  s.gap_centers = {wrap_phase(c0), wrap_phase(c0 + std::numbers::pi)};
  s.arcs = {Arc{wrap_phase(c0 + theta), std::numbers::pi - 2.0 * theta},
            Arc{wrap_phase(c0 + std::numbers::pi + theta), std::numbers::pi - 2.0 * theta}};

  const EigenSystem eig = eigensystem(coin, grid);
  for (const Branch& br : eig.branch) {
    for (const cplx& l : br.lambda) s.sampled_phases.push_back(wrap_phase(std::arg(l)));
  }
  std::sort(s.sampled_phases.begin(), s.sampled_phases.end());

  double gap = s.sampled_phases.front() + two_pi - s.sampled_phases.back();
  for (std::size_t i = 1; i < s.sampled_phases.size(); ++i) {
    gap = std::max(gap, s.sampled_phases[i] - s.sampled_phases[i - 1]);
  }
  s.max_sample_gap = gap;

  double closest = std::numbers::pi;
  for (double p : s.sampled_phases) {
    for (double c : s.gap_centers) closest = std::min(closest, circular_distance(p, c));
  }
  s.measured_gap_half_width = closest;
  return s;
}

}  // namespace qwalk
