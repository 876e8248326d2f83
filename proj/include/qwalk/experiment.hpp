#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/diagnostics.hpp"
#include "qwalk/report.hpp"

namespace qwalk {

enum class Verdict { divergent, convergent, inconclusive, failed };

const char* verdict_name(Verdict v);

// What the classification looked at.
struct DichotomyEvidence {
  GrowthFit fit;
  double max_defect = 0.0;
  double last_defect = 0.0;    // defect(T, 2T) at the largest probed T
  double decay_slope = 0.0;    // log-log slope of defect(T, 2T) over T >= 8
  bool monotone_tail = false;  // strictly decreasing over the last three doublings
  std::int64_t ratio_t_lo = 0;
  std::int64_t ratio_t_hi = 0;
  double defect_ratio = 0.0;   // defect at ratio_t_hi over defect at ratio_t_lo
};

// DIVERGENT: the partial sums grow (R^2 >= 0.98 and a power law with p >= 0.05
// or a logarithm, positive coefficient). CONVERGENT: the defect vanishes, or
// it decreases over the last three doublings with log-log slope <= -0.2.
// Both or neither: INCONCLUSIVE.
Verdict classify(const GrowthFit& fit, const DefectSeries& defects, DichotomyEvidence* evidence = nullptr);

// Normalized seed state described by the config.
StateVector make_seed(const ExperimentConfig& cfg);

struct CellResult {
  double gamma = 0.0;
  Verdict verdict = Verdict::failed;
  std::string error;
  DichotomyEvidence evidence;
  std::optional<LemmaReport> lemmas;
  std::vector<ReportRecord> records;  // sorted
  std::string file_name;
};

// One gamma cell: divergence series and fit, Cauchy defect doublings and,
// if enabled, the lemma suite. Never throws; failures land in `error`.
CellResult run_cell(const ExperimentConfig& cfg, const StateVector& seed, double gamma);

struct Summary {
  std::string csv;    // all records sorted by (gamma, diagnostic, t)
  std::string table;  // one row per gamma
};

// Throws ValidationError on an empty record set.
Summary emit_summary(std::vector<ReportRecord> records, const std::vector<CellResult>& cells);

struct ExperimentResult {
  std::vector<CellResult> cells;  // in config gamma order
  Summary summary;
  std::filesystem::path out_dir;
};

// Runs every gamma cell on a worker pool, writes one CSV per cell, the
// spectrum dump and the summaries into cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Canonical per-cell file name built from the parameters.
std::string cell_file_name(const ExperimentConfig& cfg, double gamma);

// Parameter line written at the top of every record file.
std::string provenance_line(const ExperimentConfig& cfg, double gamma);

}  // namespace qwalk
