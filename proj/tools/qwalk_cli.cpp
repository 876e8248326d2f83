#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "qwalk/config.hpp"
#include "qwalk/diagnostics.hpp"
#include "qwalk/eigensystem.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/report.hpp"
#include "qwalk/report_format.hpp"
#include "qwalk/velocity.hpp"
#include "qwalk/walk.hpp"

namespace fs = std::filesystem;
using namespace qwalk;

namespace {

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> fields;
};

ExperimentConfig assemble(const Overrides& o) {
  ExperimentConfig cfg = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path, false);
  std::vector<std::string> errors;
  for (const auto& [key, value] : o.fields) {
    if (auto err = set_field(cfg, key, value)) errors.push_back("--" + *err);
  }
  for (auto& v : validate_config(cfg)) errors.push_back(std::move(v));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

fs::path prepare_out(const ExperimentConfig& cfg) {
  fs::path dir = cfg.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

int cmd_spectrum(const ExperimentConfig& cfg, std::size_t n) {
  const KGrid grid{n};
  const EigenSystem eig = eigensystem(cfg.coin(), grid);
  std::ostringstream csv;
  write_spectrum_csv(csv, eig);
  const fs::path path = prepare_out(cfg) / "spectrum.csv";
  write_text_file(path, csv.str());
  const SpectrumSummary s = u0_spectrum(cfg.coin(), grid);
  std::cout << "spectrum of U0 on the unit circle (phases in radians)\n";
  for (const Arc& a : s.arcs) {
    std::cout << "  arc start " << format_double(a.start) << "  length " << format_double(a.length) << "\n";
  }
  std::cout << "  gap half-width " << format_double(s.gap_half_width) << " (sampled "
            << format_double(s.measured_gap_half_width) << ")\n"
            << "  largest gap between samples " << format_double(s.max_sample_gap) << "\n"
            << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_evolve(const ExperimentConfig& cfg, std::int64_t t, bool free_walk) {
  const StateVector seed = make_seed(cfg);
  const std::optional<PhaseProfile> profile =
      free_walk ? std::nullopt : std::optional<PhaseProfile>(cfg.profile(cfg.gamma.front()));
  const StateVector start = EvolutionPlan{std::abs(t), false, 1}.embed(seed);
  const StateVector psi = evolve(start, cfg.coin(), profile, t);
  std::string csv = "x,probability\n";
  for (std::int64_t x = psi.window_lo(); x <= psi.window_hi(); ++x) {
    csv += std::to_string(x) + "," + format_double(psi[x].norm_squared()) + "\n";
  }
  const fs::path path = prepare_out(cfg) / "evolve.csv";
  write_text_file(path, csv);
  std::cout << "t = " << t << (free_walk ? " (free walk)" : "") << ", norm " << format_double(psi.norm()) << "\nwrote "
            << path.string() << "\n";
  return 0;
}

int cmd_defect(const ExperimentConfig& cfg) {
  const StateVector seed = make_seed(cfg);
  std::vector<std::int64_t> times;
  for (std::int64_t t = 1; t <= cfg.t_max; t *= 2) times.push_back(t);
  const fs::path dir = prepare_out(cfg);
  for (double gamma : cfg.gamma) {
    const DefectSeries d = defect_doublings(seed, cfg.coin(), cfg.profile(gamma), times);
    std::vector<ReportRecord> recs;
    append_series(recs, d, gamma, cfg.a_mod, cfg.delta);
    const fs::path path = dir / ("defect_gamma" + format_double(gamma) + ".csv");
    write_text_file(path, records_csv(recs, provenance_line(cfg, gamma)));
    std::cout << "gamma " << format_double(gamma) << ":";
    for (std::size_t i = 0; i < d.size(); ++i) std::printf(" %.4g", d.value[i]);
    std::cout << "\n";
  }
  return 0;
}

int cmd_lemmas(const ExperimentConfig& cfg) {
  const StateVector seed = make_seed(cfg);
  const double gamma = cfg.gamma.front();
  std::vector<std::int64_t> t_grid;
  for (std::int64_t t = 2; t <= cfg.t_max; ++t) t_grid.push_back(t);
  LemmaOptions opt;
  opt.grid_n = cfg.grid_n;
  opt.tail_tol = cfg.tail_tol;
  opt.trim_tol = cfg.trim_tol;
  const LemmaReport rep = lemma_suite(seed, cfg.coin(), cfg.profile(gamma), make_filter(cfg.effective_eps(), cfg.coin()),
                                      t_grid, {{0, 0.25}, {0, 0.5}, {0, 1}, {0, 2}}, opt);
  std::vector<ReportRecord> recs;
  for (const auto& s : rep.all_series()) append_series(recs, s, gamma, cfg.a_mod, cfg.delta);
  sort_records(recs);
  const fs::path path = prepare_out(cfg) / ("lemmas_gamma" + format_double(gamma) + ".csv");
  write_text_file(path, records_csv(recs, provenance_line(cfg, gamma)));
  auto flag = [](bool ok) { return ok ? "ok" : "VIOLATED"; };
  std::printf("kappa1 %.6g  rate bound %s\n", rep.kappa1, flag(rep.velocity_rate_ok));
  std::printf("L1 %.6g  L2 %.6g  sup rate %.6g  %s\n", rep.L1, rep.L2, rep.resolvent_rate, flag(rep.resolvent_rate_ok));
  std::printf("kappa2 %.6g  %s\n", rep.kappa2, flag(rep.cutoff_rate_ok));
  std::printf("kappa3 %.6g  kappa4 %.6g  ||G_eps(V0) phi|| %.3g  margins %s\n", rep.kappa3, rep.kappa4,
              rep.g_eps_v0_norm, flag(rep.margins_ok));
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const ExperimentResult r = run_experiment(cfg);
  std::cout << r.summary.table << "wrote " << r.out_dir.string() << "\n";
  for (const auto& c : r.cells) {
    if (c.verdict == Verdict::failed) return 2;
  }
  return 0;
}

int cmd_weaklimit(const ExperimentConfig& cfg, std::int64_t t) {
  const StateVector seed = make_seed(cfg);
  const KGrid grid = KGrid::covering(std::max<std::int64_t>(4096, seed.width()));
  const WeakLimitResult w = weak_limit_compare(seed, cfg.coin(), t, grid);
  std::printf("t %lld  KS %.6g  velocity range [%.4f, %.4f]  mass outside band %.3g\n", static_cast<long long>(t),
              w.ks, w.min_velocity, w.max_velocity, w.mass_outside);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum walk scattering diagnostics"};
  app.require_subcommand(1);
  Overrides o;
  auto field = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(flag, [&o, key](const std::string& v) { o.fields[key] = v; }, help);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
    field(sub, "--gamma", "gamma", "decay exponent(s), comma separated");
    field(sub, "--a-mod", "a_mod", "|a| of the coin");
    field(sub, "--a-arg", "a_arg", "arg a");
    field(sub, "--b-arg", "b_arg", "arg b");
    field(sub, "--delta", "delta", "coin determinant phase");
    field(sub, "--g", "g", "perturbation amplitude");
    field(sub, "--tmax", "t_max", "probe horizon");
    field(sub, "--eps", "eps", "velocity filter width");
    field(sub, "--seed-state", "seed_state", "single-site | two-site | filtered");
    field(sub, "--out", "out_dir", "output directory");
    field(sub, "--threads", "threads", "worker threads (0: all cores)");
  };

  std::size_t grid_n = 1024;
  std::int64_t t = 0;
  bool free_walk = false;
  auto* spectrum = app.add_subcommand("spectrum", "dump eigenvalues, velocities and spectral arcs");
  common(spectrum);
  spectrum->add_option("--n", grid_n, "momentum grid size")->check(CLI::Range(8, 1 << 22));
  auto* evolve_cmd = app.add_subcommand("evolve", "position distribution of one trajectory");
  common(evolve_cmd);
  evolve_cmd->add_option("--t", t, "number of steps (default t_max)");
  evolve_cmd->add_flag("--free", free_walk, "use the unperturbed walk");
  auto* defect = app.add_subcommand("defect", "Cauchy defect doublings per gamma");
  common(defect);
  auto* lemmas = app.add_subcommand("lemmas", "rate and margin checks for the first gamma");
  common(lemmas);
  auto* sweep = app.add_subcommand("sweep", "full gamma sweep with classification");
  common(sweep);
  auto* weak = app.add_subcommand("weaklimit", "KS distance between x/t and the velocity law");
  common(weak);
  weak->add_option("--t", t, "time horizon (default 512)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const ExperimentConfig cfg = assemble(o);
    if (*spectrum) return cmd_spectrum(cfg, grid_n);
    if (*evolve_cmd) return cmd_evolve(cfg, t != 0 ? t : cfg.t_max, free_walk);
    if (*defect) return cmd_defect(cfg);
    if (*lemmas) return cmd_lemmas(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*weak) return cmd_weaklimit(cfg, t != 0 ? t : 512);
  } catch (const NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
