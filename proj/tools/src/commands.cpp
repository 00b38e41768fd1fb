#include "cvsteer/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "cvsteer/cli/serialize.hpp"
#include "cvsteer/sweep.hpp"

namespace cvsteer::cli {

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  invalid configuration (the message names the field)\n"
    "  3  an integral missed its tolerance (suppress with --allow-flagged)\n"
    "  4  output file could not be written\n"
    "  5  a requested criterion never crosses its bound\n";

// Writes the whole payload at once so a failed write never leaves a partial
// file that looks complete.
bool emit(const RunConfig& cfg, const std::string& payload, std::ostream& out, std::ostream& err) {
  if (cfg.output_path.empty()) {
    out << payload;
    return true;
  }
  std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (file) file << payload;
  if (file) file.close();
  if (!file) {
    err << "error: cannot write '" << cfg.output_path << "'\n";
    return false;
  }
  return true;
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions opts;
  opts.theta_min = cfg.theta_min;
  opts.theta_max = cfg.theta_max;
  opts.root_tol = cfg.root_tol;
  opts.threads = cfg.threads;
  opts.units = UnitSystem{cfg.m_omega};
  return opts;
}

int flagged_exit(bool flagged, const RunConfig& cfg, std::ostream& err) {
  if (!flagged) return kExitOk;
  if (cfg.allow_flagged) {
    err << "warning: some integrals missed their tolerance\n";
    return kExitOk;
  }
  err << "error: some integrals missed their tolerance (rerun with --allow-flagged to accept)\n";
  return kExitTolerance;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<CriterionResult> results;
  for (Criterion c : cfg.criteria) {
    results.push_back(evaluate(c, cfg.state, *cfg.theta, cfg.quad, UnitSystem{cfg.m_omega}));
  }
  std::string payload;
  if (effective_format(cfg, Command::Eval) == Format::Csv) {
    payload = eval_csv(results);
  } else {
    payload = nlohmann::json{{"command", "eval"}, {"state", cfg.state}, {"results", results}}.dump(2) + "\n";
  }
  if (!emit(cfg, payload, out, err)) return kExitIo;
  const bool flagged = std::any_of(results.begin(), results.end(), [](const auto& r) { return r.flagged; });
  return flagged_exit(flagged, cfg, err);
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Format format = effective_format(cfg, Command::Sweep);
  auto opts = sweep_options(cfg);
  // Critical points only appear in the JSON rendering.
  opts.locate_criticals = format == Format::Json;
  const auto result = sweep(cfg.state, cfg.criteria, cfg.steps, cfg.quad, opts);
  std::string payload;
  if (format == Format::Csv) {
    payload = sweep_csv(result);
  } else {
    payload = nlohmann::json(result).dump(2) + "\n";
  }
  if (!emit(cfg, payload, out, err)) return kExitIo;
  return flagged_exit(!result.flagged.empty(), cfg, err);
}

int cmd_critical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<CriticalPoint> points;
  bool missing = false;
  auto opts = sweep_options(cfg);
  for (Criterion c : cfg.criteria) {
    try {
      const auto found = find_critical_angles(cfg.state, c, cfg.quad, cfg.root_tol, opts);
      points.insert(points.end(), found.begin(), found.end());
    } catch (const NoRootInRange& e) {
      err << "error: " << e.what() << '\n';
      missing = true;
    }
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const CriticalPoint& a, const CriticalPoint& b) { return a.angle < b.angle; });

  out << critical_summary(cfg.state, points);
  if (!cfg.output_path.empty()) {
    std::string payload;
    if (effective_format(cfg, Command::Critical) == Format::Csv) {
      payload = critical_csv(points);
    } else {
      payload = nlohmann::json{{"command", "critical"}, {"state", cfg.state}, {"criticals", points}}.dump(2) + "\n";
    }
    if (!emit(cfg, payload, out, err)) return kExitIo;
  }
  return missing ? kExitNoRoot : kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto report = hierarchy_report(cfg.state, cfg.quad, cfg.steps, sweep_options(cfg));
  if (!emit(cfg, nlohmann::json(report).dump(2) + "\n", out, err)) return kExitIo;
  return kExitOk;
}

struct FlagInfo {
  const char* names;
  const char* key;
  const char* help;
};

constexpr FlagInfo kFlags[] = {
    {"--state", "state", "psi or psi-prime"},
    {"--criteria", "criteria", "comma list of reid, entropic, chsh (default reid,entropic)"},
    {"--theta", "theta", "single angle for eval, in [0, pi]"},
    {"--theta-min", "theta_min", "sweep start (default 0)"},
    {"--theta-max", "theta_max", "sweep end (default pi)"},
    {"--steps", "steps", "grid points for sweep and report (default 315)"},
    {"--gh-order", "gh_order", "Gauss-Hermite order (default 64)"},
    {"--L,--half-width", "L", "truncation half-width in oscillator lengths (default 8)"},
    {"--panel-tol", "panel_tol", "adaptive panel tolerance (default 1e-10)"},
    {"--max-depth", "max_depth", "adaptive bisection depth limit (default 40)"},
    {"--root-tol", "root_tol", "critical-angle bracket width (default 1e-6)"},
    {"--m-omega", "m_omega", "product m*omega (default 1)"},
    {"--threads", "threads", "worker threads, 0 for all cores (default 0)"},
    {"-o,--output", "output", "write results here instead of standard output"},
    {"--format", "format", "csv or json"},
};

}  // namespace

int run_command(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg, command);
    switch (command) {
      case Command::Eval: return cmd_eval(cfg, out, err);
      case Command::Sweep: return cmd_sweep(cfg, out, err);
      case Command::Critical: return cmd_critical(cfg, out, err);
      case Command::Report: return cmd_report(cfg, out, err);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steering and Bell criteria for two-mode oscillator states", "cvsteer"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  struct Bound {
    CLI::Option* option;
    const char* key;
  };
  std::map<CLI::App*, std::vector<Bound>> bound;
  std::map<std::string, std::string> raw;
  std::string config_path;
  bool allow_flagged = false;

  const std::pair<Command, const char*> commands[] = {
      {Command::Eval, "evaluate criteria at one angle"},
      {Command::Sweep, "evaluate criteria on a uniform angle grid"},
      {Command::Critical, "locate the angles where criteria cross their bounds"},
      {Command::Report, "hierarchy report of detected and undetected steering"},
  };
  std::map<CLI::App*, Command> which;
  for (const auto& [command, description] : commands) {
    auto* sub = app.add_subcommand(std::string(to_string(command)), description);
    sub->footer(kExitCodeHelp);
    which[sub] = command;
    for (const auto& f : kFlags) {
      auto* opt = sub->add_option(f.names, raw[std::string(to_string(command)) + "/" + f.key], f.help);
      bound[sub].push_back({opt, f.key});
    }
    sub->add_option("--config", config_path, "key = value file; flags override it");
    sub->add_flag("--allow-flagged", allow_flagged, "exit 0 even when an integral misses its tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (const auto& b : bound[chosen]) {
      if (b.option->count() > 0) apply_setting(cfg, b.key, b.option->as<std::string>());
    }
    if (allow_flagged) cfg.allow_flagged = true;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run_command(which[chosen], cfg, out, err);
}

}  // namespace cvsteer::cli
