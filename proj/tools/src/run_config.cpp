#include "cvsteer/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cvsteer::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Eval: return "eval";
    case Command::Sweep: return "sweep";
    case Command::Critical: return "critical";
    case Command::Report: return "report";
  }
  return "?";
}

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "' as a number");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError(std::string(key), "must be finite");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

std::vector<Criterion> parse_criteria(std::string_view text) {
  std::vector<Criterion> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) {
      try {
        out.push_back(criterion_from_string(item));
      } catch (const std::invalid_argument&) {
        throw ConfigError("criteria", "unknown criterion '" + std::string(item) + "' (expected reid, entropic, chsh)");
      }
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "state",      "criteria", "theta",    "theta_min", "theta_max", "steps",
      "gh_order",   "L",        "half_width", "panel_tol", "max_depth", "root_tol",
      "m_omega",    "threads",  "output",   "output_path", "format",  "allow_flagged"};
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const std::string k(key);
  if (key == "state") {
    try {
      cfg.state = state_family_from_string(trim(value));
    } catch (const std::invalid_argument&) {
      throw ConfigError(k, "unknown state '" + std::string(trim(value)) + "' (expected psi or psi-prime)");
    }
  } else if (key == "criteria") {
    cfg.criteria = parse_criteria(value);
  } else if (key == "theta") {
    cfg.theta = parse_number<double>(key, value);
  } else if (key == "theta_min") {
    cfg.theta_min = parse_number<double>(key, value);
  } else if (key == "theta_max") {
    cfg.theta_max = parse_number<double>(key, value);
  } else if (key == "steps") {
    cfg.steps = parse_number<int>(key, value);
  } else if (key == "gh_order") {
    cfg.quad.gh_order = parse_number<int>(key, value);
  } else if (key == "L" || key == "half_width") {
    cfg.quad.half_width = parse_number<double>(key, value);
  } else if (key == "panel_tol") {
    cfg.quad.panel_tol = parse_number<double>(key, value);
  } else if (key == "max_depth") {
    cfg.quad.max_depth = parse_number<int>(key, value);
  } else if (key == "root_tol") {
    cfg.root_tol = parse_number<double>(key, value);
  } else if (key == "m_omega") {
    cfg.m_omega = parse_number<double>(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_number<unsigned>(key, value);
  } else if (key == "output" || key == "output_path") {
    cfg.output_path = std::string(trim(value));
  } else if (key == "format") {
    const auto v = trim(value);
    if (v == "csv") {
      cfg.format = Format::Csv;
    } else if (v == "json") {
      cfg.format = Format::Json;
    } else {
      throw ConfigError(k, "expected csv or json, got '" + std::string(v) + "'");
    }
  } else if (key == "allow_flagged") {
    cfg.allow_flagged = parse_bool(key, value);
  } else {
    throw ConfigError(k, "unknown configuration key");
  }
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", "line " + std::to_string(line_no) + " is not of the form key = value");
    }
    apply_setting(cfg, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

void validate(const RunConfig& cfg, Command command) {
  constexpr double pi = std::numbers::pi;
  if (cfg.criteria.empty()) throw ConfigError("criteria", "at least one criterion is required");
  if (cfg.theta_min < 0.0 || cfg.theta_min > pi) throw ConfigError("theta_min", "must lie in [0, pi]");
  if (cfg.theta_max < 0.0 || cfg.theta_max > pi) throw ConfigError("theta_max", "must lie in [0, pi]");
  if (!(cfg.theta_min < cfg.theta_max)) throw ConfigError("theta_min", "must be below theta_max");
  if (cfg.steps < 2) throw ConfigError("steps", "must be at least 2");
  if (!(cfg.root_tol > 0.0)) throw ConfigError("root_tol", "must be positive");
  if (!(cfg.m_omega > 0.0)) throw ConfigError("m_omega", "must be positive");
  if (cfg.quad.gh_order < 2 || cfg.quad.gh_order > 1024) throw ConfigError("gh_order", "must lie in [2, 1024]");
  if (!(cfg.quad.half_width > 0.0)) throw ConfigError("L", "must be positive");
  if (!(cfg.quad.panel_tol > 0.0 && cfg.quad.panel_tol < 1.0)) throw ConfigError("panel_tol", "must lie in (0, 1)");
  if (cfg.quad.max_depth < 1) throw ConfigError("max_depth", "must be at least 1");
  if (command == Command::Eval) {
    if (!cfg.theta) throw ConfigError("theta", "eval needs --theta");
    if (*cfg.theta < 0.0 || *cfg.theta > pi) throw ConfigError("theta", "must lie in [0, pi]");
  }
  if (command == Command::Report && cfg.format == Format::Csv) {
    throw ConfigError("format", "report is only available as json");
  }
}

Format effective_format(const RunConfig& cfg, Command command) {
  if (cfg.format) return *cfg.format;
  return command == Command::Report ? Format::Json : Format::Csv;
}

}  // namespace cvsteer::cli
