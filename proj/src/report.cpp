#include "qwalk/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "qwalk/errors.hpp"
#include "qwalk/report_format.hpp"

namespace qwalk {

std::string record_line(const ReportRecord& r) {
  std::string s = r.diagnostic;
  s += ',';
  s += format_double(r.gamma);
  s += ',';
  s += format_double(r.a_mod);
  s += ',';
  s += format_double(r.delta);
  s += ',';
  s += std::to_string(r.t);
  s += ',';
  s += format_double(r.value);
  return s;
}

void append_series(std::vector<ReportRecord>& out, const DefectSeries& series, double gamma, double a_mod,
                   double delta) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    out.push_back({series.name, gamma, a_mod, delta, series.t[i], series.value[i]});
  }
}

void sort_records(std::vector<ReportRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ReportRecord& l, const ReportRecord& r) {
    return std::tie(l.gamma, l.diagnostic, l.t) < std::tie(r.gamma, r.diagnostic, r.t);
  });
}

std::string records_csv(const std::vector<ReportRecord>& records, const std::string& provenance) {
  std::string out;
  if (!provenance.empty()) out += "# " + provenance + "\n";
  out += kRecordHeader;
  out += '\n';
  for (const auto& r : records) {
    out += record_line(r);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os << text;
  os.close();
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace qwalk
