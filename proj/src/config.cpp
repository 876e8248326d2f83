#include "qwalk/config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "qwalk/report_format.hpp"

namespace qwalk {

const char* seed_name(SeedKind kind) {
  switch (kind) {
    case SeedKind::single_site: return "single-site";
    case SeedKind::two_site: return "two-site";
    case SeedKind::filtered: return "filtered";
  }
  return "unknown";
}

std::optional<SeedKind> parse_seed_name(std::string_view text) {
  for (SeedKind k : {SeedKind::single_site, SeedKind::two_site, SeedKind::filtered}) {
    if (text == seed_name(k)) return k;
  }
  return std::nullopt;
}

double ExperimentConfig::effective_eps() const { return eps ? *eps : std::min(0.1, a_mod / 7.0); }

unsigned ExperimentConfig::effective_threads() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

CoinSpec ExperimentConfig::coin() const { return build_coin(a_mod, a_arg, b_arg, delta); }

PhaseProfile ExperimentConfig::profile(double gamma_value) const { return make_profile(gamma_value, g); }

namespace {

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

template <class Int>
std::optional<Int> to_int(std::string_view s) {
  s = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<bool> to_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  return std::nullopt;
}

std::string expected(std::string_view key, std::string_view what, std::string_view value) {
  return std::string(key) + ": expected " + std::string(what) + ", got '" + std::string(value) + "'";
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : ValidationError("invalid configuration: " + join(violations, "; ")), violations_(std::move(violations)) {}

std::optional<std::string> set_field(ExperimentConfig& cfg, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  auto real = [&](double& dst) -> std::optional<std::string> {
    const auto v = to_double(value);
    if (!v) return expected(key, "a number", value);
    dst = *v;
    return std::nullopt;
  };
  if (key == "a_mod") return real(cfg.a_mod);
  if (key == "a_arg") return real(cfg.a_arg);
  if (key == "b_arg") return real(cfg.b_arg);
  if (key == "delta") return real(cfg.delta);
  if (key == "g") return real(cfg.g);
  if (key == "seed_sigma") return real(cfg.seed_sigma);
  if (key == "tail_tol") return real(cfg.tail_tol);
  if (key == "trim_tol") return real(cfg.trim_tol);
  if (key == "eps") {
    double e = 0.0;
    if (auto err = real(e)) return err;
    cfg.eps = e;
    return std::nullopt;
  }
  if (key == "gamma") {
    std::vector<double> list;
    std::string_view rest = value;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      const auto v = to_double(item);
      if (!v) return expected(key, "a comma-separated list of numbers", value);
      list.push_back(*v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    cfg.gamma = std::move(list);
    return std::nullopt;
  }
  if (key == "seed_state") {
    const auto k = parse_seed_name(value);
    if (!k) return expected(key, "single-site, two-site or filtered", value);
    cfg.seed_state = *k;
    return std::nullopt;
  }
  if (key == "t_max") {
    const auto v = to_int<std::int64_t>(value);
    if (!v) return expected(key, "an integer", value);
    cfg.t_max = *v;
    return std::nullopt;
  }
  if (key == "grid_n") {
    const auto v = to_int<std::size_t>(value);
    if (!v) return expected(key, "a nonnegative integer", value);
    cfg.grid_n = *v;
    return std::nullopt;
  }
  if (key == "threads") {
    const auto v = to_int<unsigned>(value);
    if (!v) return expected(key, "a nonnegative integer", value);
    cfg.threads = *v;
    return std::nullopt;
  }
  if (key == "lemmas") {
    const auto v = to_bool(value);
    if (!v) return expected(key, "true or false", value);
    cfg.lemmas = *v;
    return std::nullopt;
  }
  if (key == "out_dir") {
    if (value.empty()) return std::string("out_dir: must not be empty");
    cfg.out_dir = std::string(value);
    return std::nullopt;
  }
  return "unknown key '" + std::string(key) + "'";
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> v;
  auto finite = [&](double x, const char* name) {
    if (!std::isfinite(x)) v.push_back(std::string(name) + ": must be finite");
    return std::isfinite(x);
  };
  if (finite(cfg.a_mod, "a_mod") && (cfg.a_mod < 0.0 || cfg.a_mod > 1.0)) v.push_back("a_mod: must lie in [0, 1]");
  finite(cfg.a_arg, "a_arg");
  finite(cfg.b_arg, "b_arg");
  finite(cfg.delta, "delta");
  if (finite(cfg.g, "g") && (cfg.g < 0.0 || cfg.g > 1.0)) v.push_back("g: must lie in [0, 1]");
  if (cfg.gamma.empty()) v.push_back("gamma: list must not be empty");
  std::set<double> seen;
  for (double gm : cfg.gamma) {
    if (!std::isfinite(gm) || gm <= 0.0) v.push_back("gamma: every entry must be finite and > 0");
    if (!seen.insert(gm).second) v.push_back("gamma: duplicate entry " + format_double(gm));
  }
  if (!std::isfinite(cfg.seed_sigma) || cfg.seed_sigma <= 0.0) v.push_back("seed_sigma: must be > 0");
  if (cfg.t_max < 16 || cfg.t_max > 65536) v.push_back("t_max: must lie in [16, 65536]");
  if (cfg.grid_n != 0 && (cfg.grid_n < 8 || !std::has_single_bit(cfg.grid_n))) {
    v.push_back("grid_n: must be 0 or a power of two >= 8");
  }
  if (!(cfg.tail_tol > 0.0) || !std::isfinite(cfg.tail_tol)) v.push_back("tail_tol: must be > 0");
  if (!(cfg.trim_tol >= 0.0) || !std::isfinite(cfg.trim_tol)) v.push_back("trim_tol: must be >= 0");

  const bool needs_filter = cfg.seed_state == SeedKind::filtered || cfg.lemmas;
  if (needs_filter && std::isfinite(cfg.a_mod)) {
    const double e = cfg.effective_eps();
    if (!(e > 0.0 && 6.0 * e < cfg.a_mod)) {
      std::ostringstream os;
      os << "eps: need 0 < eps < |a|/6 = " << format_double(cfg.a_mod / 6.0) << ", got " << format_double(e);
      if (cfg.a_mod == 0.0) os << " (a_mod = 0 admits no velocity filter; use a finite seed and lemmas = false)";
      v.push_back(os.str());
    }
  }
  return v;
}

ExperimentConfig parse_config(std::string_view text, bool validate) {
  ExperimentConfig cfg;
  std::vector<std::string> violations;
  std::set<std::string> keys;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      violations.push_back(where + "expected key = value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!keys.insert(key).second) {
      violations.push_back(where + "duplicate key '" + key + "'");
      continue;
    }
    if (auto err = set_field(cfg, key, line.substr(eq + 1))) violations.push_back(where + *err);
  }
  if (validate) {
    for (auto& c : validate_config(cfg)) violations.push_back(std::move(c));
  }
  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

ExperimentConfig load_config(const std::string& path, bool validate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), validate);
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "a_mod = " << format_double(cfg.a_mod) << "\n";
  os << "a_arg = " << format_double(cfg.a_arg) << "\n";
  os << "b_arg = " << format_double(cfg.b_arg) << "\n";
  os << "delta = " << format_double(cfg.delta) << "\n";
  os << "gamma = ";
  for (std::size_t i = 0; i < cfg.gamma.size(); ++i) os << (i ? ", " : "") << format_double(cfg.gamma[i]);
  os << "\n";
  os << "g = " << format_double(cfg.g) << "\n";
  os << "seed_state = " << seed_name(cfg.seed_state) << "\n";
  os << "seed_sigma = " << format_double(cfg.seed_sigma) << "\n";
  if (cfg.eps) os << "eps = " << format_double(*cfg.eps) << "\n";
  os << "t_max = " << cfg.t_max << "\n";
  os << "grid_n = " << cfg.grid_n << "\n";
  os << "out_dir = " << cfg.out_dir << "\n";
  os << "threads = " << cfg.threads << "\n";
  os << "tail_tol = " << format_double(cfg.tail_tol) << "\n";
  os << "trim_tol = " << format_double(cfg.trim_tol) << "\n";
  os << "lemmas = " << (cfg.lemmas ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace qwalk
