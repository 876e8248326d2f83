#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

enum class SeedKind { single_site, two_site, filtered };

const char* seed_name(SeedKind kind);
std::optional<SeedKind> parse_seed_name(std::string_view text);

struct ExperimentConfig {
  double a_mod = 0.70710678118654752;
  double a_arg = 0.0;
  double b_arg = 0.0;
  double delta = 3.14159265358979323846;
  std::vector<double> gamma{0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
  double g = 1.0;
  SeedKind seed_state = SeedKind::filtered;
  double seed_sigma = 4.0;
  std::optional<double> eps;  // default: min(0.1, a_mod / 7)
  std::int64_t t_max = 256;
  std::size_t grid_n = 0;     // 0: smallest power of two covering the window
  std::string out_dir = "qwalk_out";
  unsigned threads = 0;       // 0: hardware concurrency
  double tail_tol = 1e-10;
  double trim_tol = 1e-15;
  bool lemmas = true;

  double effective_eps() const;
  unsigned effective_threads() const;
  CoinSpec coin() const;
  PhaseProfile profile(double gamma_value) const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Carries every violation found, not just the first.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Assigns one key from its textual value; returns a message on failure.
std::optional<std::string> set_field(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Constraint violations of an assembled config (empty when valid).
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// Flat "key = value" lines, '#' comments, comma-separated lists. Unknown keys,
// malformed values, repeated keys and constraint violations are all collected
// and thrown together as a ConfigError. With validate = false only syntax and
// field types are checked, so later overrides can still repair the config.
ExperimentConfig parse_config(std::string_view text, bool validate = true);
ExperimentConfig load_config(const std::string& path, bool validate = true);

// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace qwalk
