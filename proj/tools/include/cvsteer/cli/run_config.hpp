#pragma once

// Run configuration shared by every subcommand. Values come from built-in
// defaults, then an optional key = value file, then command-line flags.

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cvsteer/criteria.hpp"
#include "cvsteer/fock.hpp"
#include "cvsteer/quadrature.hpp"

namespace cvsteer::cli {

enum class Command { Eval, Sweep, Critical, Report };
enum class Format { Csv, Json };

std::string_view to_string(Command c);
std::string_view to_string(Format f);

struct RunConfig {
  StateFamily state = StateFamily::Psi;
  /// Kept sorted and unique; column and record order never follow the request.
  std::vector<Criterion> criteria{Criterion::Reid, Criterion::Entropic};
  std::optional<double> theta;
  double theta_min = 0.0;
  double theta_max = std::numbers::pi;
  int steps = 315;
  QuadratureSpec quad{};
  double root_tol = 1e-6;
  double m_omega = 1.0;
  unsigned threads = 0;
  std::string output_path;
  /// Unset means the command's natural format: json for report, csv otherwise.
  std::optional<Format> format;
  bool allow_flagged = false;
};

/// Invalid configuration; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Recognised keys, in the spelling used by config files.
const std::vector<std::string_view>& config_keys();

/// Parses value for key into cfg. "L" and "half_width" are synonyms, as are
/// "output" and "output_path". Throws ConfigError.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Applies every `key = value` line of a config file. Blank lines and lines
/// starting with '#' are skipped.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Cross-field checks for the given command. Throws ConfigError.
void validate(const RunConfig& cfg, Command command);

Format effective_format(const RunConfig& cfg, Command command);

}  // namespace cvsteer::cli
