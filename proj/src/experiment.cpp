#include "qwalk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <thread>

#include "qwalk/eigensystem.hpp"
#include "qwalk/report_format.hpp"
#include "qwalk/velocity.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::divergent: return "DIVERGENT";
    case Verdict::convergent: return "CONVERGENT";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    case Verdict::failed: return "FAILED";
  }
  return "UNKNOWN";
}

Verdict classify(const GrowthFit& fit, const DefectSeries& defects, DichotomyEvidence* evidence) {
  DichotomyEvidence ev;
  ev.fit = fit;
  for (double d : defects.value) ev.max_defect = std::max(ev.max_defect, d);

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < defects.size(); ++i) {
    if (defects.t[i] >= 8 && defects.value[i] > 0.0) {
      lx.push_back(std::log(static_cast<double>(defects.t[i])));
      ly.push_back(std::log(defects.value[i]));
    }
  }
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    ev.decay_slope = sxy / sxx;
  }
  const std::size_t n = defects.size();
  if (n >= 4) {
    ev.monotone_tail = true;
    for (std::size_t i = n - 3; i < n; ++i) ev.monotone_tail &= defects.value[i] < defects.value[i - 1];
  }
  if (n >= 1) {
    std::size_t lo = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (defects.t[i] == 32) lo = i;
    }
    ev.ratio_t_lo = defects.t[lo];
    ev.ratio_t_hi = defects.t[n - 1];
    ev.last_defect = defects.value[n - 1];
    ev.defect_ratio = defects.value[lo] > 0.0 ? defects.value[n - 1] / defects.value[lo] : 0.0;
  }

  const bool grows = fit.r_squared >= 0.98 && fit.coefficient > 0.0 &&
                     ((fit.model == GrowthFit::Model::power && fit.exponent >= 0.05) ||
                      fit.model == GrowthFit::Model::logarithmic);
  const bool settles = ev.max_defect <= 1e-12 || (ev.monotone_tail && ev.decay_slope <= -0.2);
  if (evidence) *evidence = ev;
  if (grows && !settles) return Verdict::divergent;
  if (settles && !grows) return Verdict::convergent;
  return Verdict::inconclusive;
}

StateVector make_seed(const ExperimentConfig& cfg) {
  const Spinor chiral{cplx(1.0 / std::sqrt(2.0)), cplx(0.0, 1.0 / std::sqrt(2.0))};
  switch (cfg.seed_state) {
    case SeedKind::single_site:
      return StateVector::single_site(0, chiral, 0, 0);
    case SeedKind::two_site: {
      StateVector s(-1, 1);
      s[-1] = cplx(1.0 / std::sqrt(2.0)) * chiral;
      s[1] = cplx(1.0 / std::sqrt(2.0)) * chiral;
      return s;
    }
    case SeedKind::filtered:
      break;
  }
  // Gaussian envelope cut where it drops below 1e-17, then velocity filtered.
  const double sigma = cfg.seed_sigma;
  const auto r = static_cast<std::int64_t>(std::ceil(sigma * std::sqrt(2.0 * std::log(1e17))));
  StateVector g(-r, r);
  for (std::int64_t x = -r; x <= r; ++x) {
    const double e = std::exp(-0.5 * static_cast<double>(x * x) / (sigma * sigma));
    g[x] = cplx(e) * chiral;
  }
  g *= cplx(1.0 / g.norm());
  const CoinSpec coin = cfg.coin();
  const StateVector wide = g.padded(2048);
  const KGrid grid = cfg.grid_n >= static_cast<std::size_t>(wide.width()) ? KGrid{cfg.grid_n}
                                                                          : KGrid::covering(wide.width());
  const EigenSystem eig = eigensystem(coin, grid);
  StateVector f = trimmed(velocity_filter(wide, make_filter(cfg.effective_eps(), coin), eig,
                                          TailPolicy{cfg.tail_tol, -1}),
                          cfg.trim_tol);
  f *= cplx(1.0 / f.norm());
  return f;
}

namespace {

std::vector<std::int64_t> doubling_times(std::int64_t t_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t <= t_max; t *= 2) out.push_back(t);
  return out;
}

}  // namespace

std::string provenance_line(const ExperimentConfig& cfg, double gamma) {
  std::ostringstream os;
  os << "qwalk-suite " << kSuiteVersion << " gamma=" << format_double(gamma) << " a_mod=" << format_double(cfg.a_mod)
     << " a_arg=" << format_double(cfg.a_arg) << " b_arg=" << format_double(cfg.b_arg)
     << " delta=" << format_double(cfg.delta) << " g=" << format_double(cfg.g)
     << " seed=" << seed_name(cfg.seed_state);
  if (cfg.seed_state == SeedKind::filtered) os << " sigma=" << format_double(cfg.seed_sigma);
  os << " eps=" << format_double(cfg.effective_eps()) << " t_max=" << cfg.t_max << " grid_n=" << cfg.grid_n
     << " tail_tol=" << format_double(cfg.tail_tol) << " trim_tol=" << format_double(cfg.trim_tol)
     << " lemmas=" << (cfg.lemmas ? "true" : "false");
  return os.str();
}

std::string cell_file_name(const ExperimentConfig& cfg, double gamma) {
  std::ostringstream os;
  os << "cell_gamma" << format_double(gamma) << "_amod" << format_double(cfg.a_mod) << "_aarg"
     << format_double(cfg.a_arg) << "_barg" << format_double(cfg.b_arg) << "_delta" << format_double(cfg.delta)
     << "_g" << format_double(cfg.g) << "_" << seed_name(cfg.seed_state) << "_t" << cfg.t_max << ".csv";
  return os.str();
}

CellResult run_cell(const ExperimentConfig& cfg, const StateVector& seed, double gamma) {
  CellResult cell;
  cell.gamma = gamma;
  cell.file_name = cell_file_name(cfg, gamma);
  try {
    const CoinSpec coin = cfg.coin();
    const PhaseProfile profile = cfg.profile(gamma);
    auto add = [&](const DefectSeries& s) { append_series(cell.records, s, gamma, cfg.a_mod, cfg.delta); };
    auto scalar = [&](const char* name, double v) {
      cell.records.push_back({name, gamma, cfg.a_mod, cfg.delta, 0, v});
    };

    const DivergenceSeries div = divergence_terms(seed, coin, profile, 1, 2 * cfg.t_max);
    add(div.terms);
    add(div.partial_sums);
    add(div.perturbation_norm);
    const GrowthFit fit = fit_growth(div.partial_sums);

    DefectSeries defects = defect_doublings(seed, coin, profile, doubling_times(cfg.t_max));
    add(defects);
    cell.verdict = classify(fit, defects, &cell.evidence);

    scalar("fit_exponent", fit.exponent);
    scalar("fit_coefficient", fit.coefficient);
    scalar("fit_offset", fit.offset);
    scalar("fit_r_squared", fit.r_squared);
    scalar("fit_loglog_exponent", fit.loglog_exponent);
    scalar("fit_loglog_r_squared", fit.loglog_r_squared);
    scalar("fit_log_slope", fit.log_slope);
    scalar("fit_log_r_squared", fit.log_r_squared);
    scalar("defect_decay_slope", cell.evidence.decay_slope);
    scalar("defect_ratio", cell.evidence.defect_ratio);
    scalar("verdict_code", cell.verdict == Verdict::divergent ? 1.0 : cell.verdict == Verdict::convergent ? -1.0 : 0.0);

    if (cfg.lemmas) {
      std::vector<std::int64_t> t_grid;
      for (std::int64_t t = 2; t <= cfg.t_max; ++t) t_grid.push_back(t);
      const std::vector<cplx> z_grid{{0.0, 0.25}, {0.0, 0.5}, {0.0, 1.0}, {0.0, 2.0}};
      LemmaOptions opt;
      opt.grid_n = cfg.grid_n;
      opt.tail_tol = cfg.tail_tol;
      opt.trim_tol = cfg.trim_tol;
      LemmaReport rep = lemma_suite(seed, coin, profile, make_filter(cfg.effective_eps(), coin), t_grid, z_grid, opt);
      for (const auto& s : rep.all_series()) add(s);
      scalar("kappa1", rep.kappa1);
      scalar("kappa2", rep.kappa2);
      scalar("kappa3", rep.kappa3);
      scalar("kappa4", rep.kappa4);
      scalar("L1", rep.L1);
      scalar("L2", rep.L2);
      scalar("g_eps_v0_norm", rep.g_eps_v0_norm);
      cell.lemmas = std::move(rep);
    }
    sort_records(cell.records);
  } catch (const std::exception& e) {
    cell.verdict = Verdict::failed;
    cell.error = e.what();
    cell.records.clear();
  }
  return cell;
}

Summary emit_summary(std::vector<ReportRecord> records, const std::vector<CellResult>& cells) {
  if (records.empty()) throw ValidationError("emit_summary: no records");
  sort_records(records);
  Summary s;
  s.csv = records_csv(records);

  std::ostringstream t;
  t << std::left << std::setw(8) << "gamma" << std::setw(14) << "verdict" << std::setw(13) << "model"
    << std::setw(11) << "exponent" << std::setw(9) << "R2" << std::setw(12) << "loglog_p" << std::setw(13)
    << "defect_last" << std::setw(12) << "decay_slope" << "ratio\n";
  for (const auto& c : cells) {
    t << std::setw(8) << format_double(c.gamma) << std::setw(14) << verdict_name(c.verdict);
    if (c.verdict == Verdict::failed) {
      t << c.error << "\n";
      continue;
    }
    const auto& ev = c.evidence;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-13s%-11.4f%-9.4f%-12.4f%-13.3e%-12.3f%.4f (T=%lld/%lld)", model_name(ev.fit.model),
                  ev.fit.exponent, ev.fit.r_squared, ev.fit.loglog_exponent,
                  ev.last_defect, ev.decay_slope, ev.defect_ratio,
                  static_cast<long long>(ev.ratio_t_hi), static_cast<long long>(ev.ratio_t_lo));
    t << buf << "\n";
  }
  s.table = t.str();
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (auto v = validate_config(cfg); !v.empty()) throw ConfigError(std::move(v));
  namespace fs = std::filesystem;
  ExperimentResult result;
  result.out_dir = cfg.out_dir;
  std::error_code ec;
  fs::create_directories(result.out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + result.out_dir.string() + "': " + ec.message());

  const StateVector seed = make_seed(cfg);
  const std::size_t n = cfg.gamma.size();
  result.cells.resize(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      CellResult cell = run_cell(cfg, seed, cfg.gamma[i]);
      if (cell.verdict != Verdict::failed) {
        try {
          write_text_file(result.out_dir / cell.file_name,
                          records_csv(cell.records, provenance_line(cfg, cell.gamma)));
        } catch (const std::exception& e) {
          cell.verdict = Verdict::failed;
          cell.error = e.what();
        }
      }
      result.cells[i] = std::move(cell);
    }
  };
  const unsigned threads = std::min<unsigned>(cfg.effective_threads(), static_cast<unsigned>(n));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  const KGrid grid{cfg.grid_n > 0 ? cfg.grid_n : 1024};
  std::ostringstream spec;
  write_spectrum_csv(spec, eigensystem(cfg.coin(), grid));
  write_text_file(result.out_dir / "spectrum.csv", spec.str());

  std::vector<ReportRecord> all;
  for (const auto& c : result.cells) all.insert(all.end(), c.records.begin(), c.records.end());
  if (all.empty()) {
    result.summary.table = "no cell produced records\n";
    for (const auto& c : result.cells) result.summary.table += format_double(c.gamma) + ": " + c.error + "\n";
  } else {
    result.summary = emit_summary(std::move(all), result.cells);
  }
  if (!result.summary.csv.empty()) write_text_file(result.out_dir / "summary.csv", result.summary.csv);
  write_text_file(result.out_dir / "summary.txt", result.summary.table);
  return result;
}

}  // namespace qwalk
