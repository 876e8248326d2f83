#include "qwalk/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <mutex>
#include <numbers>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

// FFTW's planner is not thread safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place transform of both spinor components (interleaved, stride 2).
void transform(std::vector<Spinor>& data, int sign) {
  static_assert(sizeof(Spinor) == 2 * sizeof(fftw_complex));
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_many_dft(1, &n, 2, buf, nullptr, 2, 1, buf, nullptr, 2, 1, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute_dft(plan, buf, buf);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::size_t residue(std::int64_t x, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t r = x % nn;
  if (r < 0) r += nn;
  return static_cast<std::size_t>(r);
}

}  // namespace

double KGrid::node(std::size_t m) const { return 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n); }

double KGrid::spacing() const { return 2.0 * std::numbers::pi / static_cast<double>(n); }

KGrid KGrid::covering(std::int64_t width) {
  const auto w = static_cast<std::uint64_t>(std::max<std::int64_t>(width, 8));
  return KGrid{static_cast<std::size_t>(std::bit_ceil(w))};
}

KFunction forward_dft(const StateVector& state, const KGrid& grid) {
  if (grid.n == 0 || static_cast<std::int64_t>(grid.n) < state.width()) {
    throw ValidationError("forward_dft: grid of " + std::to_string(grid.n) + " nodes is smaller than window width " +
                          std::to_string(state.width()));
  }
  KFunction f(grid.n);
  for (std::int64_t x = state.window_lo(); x <= state.window_hi(); ++x) f[residue(x, grid.n)] = state[x];
  transform(f, FFTW_FORWARD);
  return f;
}

std::vector<Spinor> inverse_dft_period(const KFunction& f) {
  std::vector<Spinor> period = f;
  transform(period, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (auto& s : period) s = cplx(scale) * s;
  return period;
}

StateVector inverse_dft(const KFunction& f, std::int64_t lo, std::int64_t hi) {
  if (hi < lo || hi - lo + 1 > static_cast<std::int64_t>(f.size())) {
    throw ValidationError("inverse_dft: window wider than the grid");
  }
  const std::vector<Spinor> period = inverse_dft_period(f);
  StateVector out(lo, hi);
  for (std::int64_t x = lo; x <= hi; ++x) out[x] = period[residue(x, f.size())];
  return out;
}

}  // namespace qwalk
