#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qwalk/diagnostics.hpp"

namespace qwalk {

inline constexpr const char* kSuiteVersion = "1.0.0";

// One diagnostic value with the parameters needed to re-plot it.
struct ReportRecord {
  std::string diagnostic;
  double gamma = 0.0;
  double a_mod = 0.0;
  double delta = 0.0;
  std::int64_t t = 0;
  double value = 0.0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

inline constexpr const char* kRecordHeader = "diagnostic,gamma,a_mod,delta,t,value";

std::string record_line(const ReportRecord& r);

// Appends every point of `series` as records.
void append_series(std::vector<ReportRecord>& out, const DefectSeries& series, double gamma, double a_mod,
                   double delta);

// Sort key used everywhere records are persisted: (gamma, diagnostic, t).
void sort_records(std::vector<ReportRecord>& records);

// Header, then one line per record. `provenance` (may be empty) becomes a
// leading '#' comment line.
std::string records_csv(const std::vector<ReportRecord>& records, const std::string& provenance = {});

// Writes `text` to `path`, surfacing the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qwalk
