#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qwalk/eigensystem.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Controls how much of a k-space result may spill beyond the input support.
// The inverse transform is inspected over the whole grid period: mass farther
// than `pad` sites from the input support, or outside the input window, counts
// as tail and must stay below tol * ||input||. pad < 0 picks a quarter of the
// free room in the period.
struct TailPolicy {
  double tol = 1e-10;
  std::int64_t pad = -1;
};

// Generic branchwise k-multiplier: (T phi)^(k_m) = sum_j mult(j, m) <u_j, phihat> u_j.
// The result lives on the input window.
StateVector apply_branch_multiplier(const StateVector& state, const EigenSystem& eig,
                                    const std::function<cplx(int, std::size_t)>& mult, const TailPolicy& policy = {});

// Asymptotic velocity operator V0.
StateVector apply_V0(const StateVector& state, const EigenSystem& eig, const TailPolicy& policy = {});

// G(V0) by the spectral calculus: branch components scaled by G(v_j(k)).
StateVector apply_function_of_V0(const std::function<cplx(double)>& g, const StateVector& state, const EigenSystem& eig,
                                 const TailPolicy& policy = {});

// (z - V0)^{-1}; throws ValidationError when Im z == 0.
StateVector apply_resolvent_V0(cplx z, const StateVector& state, const EigenSystem& eig, const TailPolicy& policy = {});

// C^infinity step: 0 for u <= 0, 1 for u >= 1, built from e^{-1/u}.
double smooth_step(double u);

// Velocity cutoff and pass band for a given eps with 0 < eps < |a|/6.
struct FilterSpec {
  double eps = 0.0;

  // G_eps(s): 1 for |s| <= 2 eps, 0 for |s| >= 3 eps, smooth in between.
  double cutoff(double s) const;
  // chi(v): 0 for |v| <= 3 eps, 1 for |v| >= 4 eps, smooth in between.
  double pass(double v) const;
};

FilterSpec make_filter(double eps, const CoinSpec& coin);

// Removes the V0-spectral content with |v| < 3 eps. Throws
// FilterAnnihilationError when less than 1e-8 of the input norm survives.
StateVector velocity_filter(const StateVector& state, const FilterSpec& filter, const EigenSystem& eig,
                            const TailPolicy& policy = {});

// Arc of the unit circle: phases start .. start + length (radians, start in [0, 2pi)).
struct Arc {
  double start = 0.0;
  double length = 0.0;
};

struct SpectrumSummary {
  std::vector<Arc> arcs;               // closed form: two arcs, degenerate for a = 0
  std::vector<double> gap_centers;     // delta/2 and delta/2 + pi
  double gap_half_width = 0.0;         // arccos |a|
  std::vector<double> sampled_phases;  // arg lambda_j(k_m) in [0, 2pi), both branches
  double measured_gap_half_width = 0.0;  // min distance of samples to the gap centers
  double max_sample_gap = 0.0;           // largest empty arc between sampled phases
};

SpectrumSummary u0_spectrum(const CoinSpec& coin, const KGrid& grid);

}  // namespace qwalk
