#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"
#include "qwalk/velocity.hpp"

namespace qwalk {

// Named time series (t strictly increasing, values finite).
struct DefectSeries {
  std::string name;
  std::vector<std::int64_t> t;
  std::vector<double> value;

  void push(std::int64_t time, double v);
  std::size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
  // Value at time `time`; throws std::out_of_range when absent.
  double at(std::int64_t time) const;
};

// W(t) phi = U^{-t} U0^t phi. The window must leave room for 2|t| steps.
StateVector wave_apply(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile, std::int64_t t);

// ||W(t2) phi - W(t1) phi|| for 0 <= t1 <= t2; the state is re-windowed internally.
double cauchy_defect(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile, std::int64_t t1,
                     std::int64_t t2);

// defect(T, 2T) for every T in `times`.
DefectSeries defect_doublings(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile,
                              const std::vector<std::int64_t>& times);

// || (W(t2) - W(t1)) phi - sum_{t=t1+1}^{t2} U^{-t} (U0 - U) U0^{t-1} phi ||.
double telescoping_check(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile, std::int64_t t1,
                         std::int64_t t2);

struct DivergenceSeries {
  DefectSeries terms;              // Im <(U0 - U) U0^{t-1} phi, U0^t phi>
  DefectSeries sin_form;           // sum_x sin(theta(x)) ||(U0^{t-1} phi)(x)||^2
  DefectSeries partial_sums;       // P(T) = sum_{t_lo <= t <= T} term(t)
  DefectSeries perturbation_norm;  // ||(U0 - U) U0^{t-1} phi||
  double max_form_mismatch = 0.0;
};

// Throws NumericalGuardError when the two forms of a term disagree by more
// than 1e-12 max(1, ||phi||^2).
DivergenceSeries divergence_terms(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile,
                                  std::int64_t t_lo, std::int64_t t_hi);

struct GrowthFit {
  enum class Model { power, logarithmic, bounded };

  Model model = Model::bounded;
  double exponent = 0.0;     // p of the power law; 0 for log, fitted p (<= 0) for bounded
  double coefficient = 0.0;  // c in c T^p + d, or the log slope
  double offset = 0.0;       // d
  double r_squared = 0.0;    // of the selected model
  std::int64_t fit_t_lo = 0;
  std::int64_t fit_t_hi = 0;
  // Always reported alongside the selection.
  double loglog_exponent = 0.0;
  double loglog_r_squared = 0.0;
  double log_slope = 0.0;
  double log_r_squared = 0.0;
};

const char* model_name(GrowthFit::Model m);

// Fits a partial-sum series with the one-parameter family c (T^p - 1)/p + d
// (c log T + d at p = 0) after dropping t < burn_in. |p| < 0.05 selects the
// logarithmic model, p >= 0.05 the power model, and p <= -0.05 a bounded
// (converging) series. Needs at least 16 points after the burn-in.
GrowthFit fit_growth(const DefectSeries& series, std::int64_t burn_in = 8);

struct WeakLimitResult {
  double ks = 0.0;            // sup |F_position - F_spectral|
  double min_velocity = 0.0;  // extent of x/t over sites carrying more than
  double max_velocity = 0.0;  // 1e-16 of the total mass
  double mass_outside = 0.0;  // empirical mass with |x/t| > |a| + band
};

// Compares the law of x/t under U0^t phi with the spectral law of V0 in phi.
// Requires t >= 64; the free walk only.
WeakLimitResult weak_limit_compare(const StateVector& phi, const CoinSpec& coin, std::int64_t t, const KGrid& grid,
                                   double band = 0.05);

struct LemmaOptions {
  std::size_t grid_n = 0;         // 0: smallest power of two covering the working window
  std::int64_t tail_pad = 512;    // extra zero padding around the Heisenberg window
  double trim_tol = 1e-15;        // per-site relative cut applied to resolvent states
  double tail_tol = 1e-10;
  // G_eps(V0) phi decays only stretched-exponentially in x when phi has
  // spectral weight near v = 0, so its truncation gets a looser budget.
  double cutoff_tail_tol = 1e-6;
  std::int64_t cutoff_pad = 2048;  // minimum padding of the window holding G_eps(V0) phi
  std::int64_t reference_t = 16;  // rate checks compare against this time
  double slack_velocity = 1.5;
  double slack_resolvent = 2.0;
  double slack_cutoff = 2.0;
  double zero_floor = 1e-9;       // rescaled residuals below this count as zero
  bool rates = true;              // Q(t)/t residuals r1, r2, r3
  bool margins = true;            // divergence-term and perturbation margins at every t in [margin_t_lo, margin_t_hi]
  std::int64_t margin_t_lo = 4;
  std::int64_t margin_t_hi = 0;   // 0: max of t_grid
};

struct LemmaReport {
  // Rate residuals on t_grid.
  DefectSeries r1;                  // ||(Q(t)/t) phi - V0 phi||
  std::vector<DefectSeries> r2;     // one per z: ||(V0 - Q(t)/t)(z - V0)^{-1} phi||
  std::vector<cplx> z_grid;
  DefectSeries r3;                  // ||G_eps(Q(t)/t) phi - G_eps(V0) phi||
  // Margins on every t in the margin range.
  DefectSeries term;
  DefectSeries perturbation_norm;
  DefectSeries margin4;
  DefectSeries margin5;

  double kappa1 = 0.0;  // sup t r1
  double kappa2 = 0.0;  // sup t r3
  double L1 = 0.0;      // least squares against (|Im z|^-1, |Im z|^-2)/t
  double L2 = 0.0;
  double resolvent_rate = 0.0;  // sup t r2 / (|Im z|^-1 + |Im z|^-2)
  double kappa3 = 0.0;  // smallest constant with margin4 >= 0
  double kappa4 = 0.0;  // smallest constant with margin5 >= 0
  double g_eps_v0_norm = 0.0;  // ||G_eps(V0) phi||

  bool velocity_rate_ok = true;
  bool resolvent_rate_ok = true;
  bool cutoff_rate_ok = true;
  bool margins_ok = true;
  std::size_t grid_n = 0;

  std::vector<DefectSeries> all_series() const;
};

LemmaReport lemma_suite(const StateVector& phi, const CoinSpec& coin, const PhaseProfile& profile,
                        const FilterSpec& filter, const std::vector<std::int64_t>& t_grid,
                        const std::vector<cplx>& z_grid, const LemmaOptions& options = {});

// Relative change |a - b| / max(|a|, |b|); zero when both vanish.
double relative_change(double a, double b);

}  // namespace qwalk
