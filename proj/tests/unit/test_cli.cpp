#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cvsteer/cli/commands.hpp"
#include "cvsteer/cli/run_config.hpp"
#include "cvsteer/cli/serialize.hpp"

using namespace cvsteer;
using namespace cvsteer::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cvsteer");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cvsteer_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("settings parse and name the field on failure") {
  RunConfig cfg;
  apply_setting(cfg, "state", "psi-prime");
  apply_setting(cfg, "criteria", "chsh, reid,reid");
  apply_setting(cfg, "L", "12");
  apply_setting(cfg, "gh_order", "96");
  apply_setting(cfg, "format", "json");
  CHECK(cfg.state == StateFamily::PsiPrime);
  CHECK(cfg.criteria == std::vector{Criterion::Reid, Criterion::Chsh});
  CHECK(cfg.quad.half_width == 12.0);
  CHECK(cfg.quad.gh_order == 96);
  CHECK(cfg.format == Format::Json);

  auto field_of = [&](std::string_view key, std::string_view value) {
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  CHECK(field_of("steps", "ten") == "steps");
  CHECK(field_of("theta", "0.5x") == "theta");
  CHECK(field_of("state", "phi") == "state");
  CHECK(field_of("criteria", "reid,bell") == "criteria");
  CHECK(field_of("colour", "blue") == "colour");
  CHECK(field_of("theta", "nan") == "theta");
}

TEST_CASE("validation") {
  auto field_of = [](const RunConfig& cfg, Command c) {
    try {
      validate(cfg, c);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  RunConfig cfg;
  CHECK(field_of(cfg, Command::Sweep) == "none");
  CHECK(field_of(cfg, Command::Eval) == "theta");
  cfg.theta = 4.0;
  CHECK(field_of(cfg, Command::Eval) == "theta");
  cfg.theta = std::numbers::pi;
  CHECK(field_of(cfg, Command::Eval) == "none");

  RunConfig bad = cfg;
  bad.steps = 1;
  CHECK(field_of(bad, Command::Sweep) == "steps");
  bad = cfg;
  bad.theta_min = 2.0;
  bad.theta_max = 1.0;
  CHECK(field_of(bad, Command::Sweep) == "theta_min");
  bad = cfg;
  bad.criteria.clear();
  CHECK(field_of(bad, Command::Sweep) == "criteria");
  bad = cfg;
  bad.quad.panel_tol = 2.0;
  CHECK(field_of(bad, Command::Sweep) == "panel_tol");
  bad = cfg;
  bad.format = Format::Csv;
  CHECK(field_of(bad, Command::Report) == "format");
  CHECK(effective_format(RunConfig{}, Command::Report) == Format::Json);
  CHECK(effective_format(RunConfig{}, Command::Sweep) == Format::Csv);
}

TEST_CASE("config text") {
  RunConfig cfg;
  apply_config_text(cfg, "# comment\n\nstate = psi-prime\n  steps=17  \ncriteria = chsh\r\n");
  CHECK(cfg.state == StateFamily::PsiPrime);
  CHECK(cfg.steps == 17);
  CHECK(cfg.criteria == std::vector{Criterion::Chsh});
  CHECK_THROWS_AS(apply_config_text(cfg, "steps 17\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_file(cfg, "/definitely/not/here.cfg"), ConfigError);
  for (auto key : config_keys()) CHECK(!key.empty());
}

TEST_CASE("flags override the config file, which overrides defaults") {
  const auto path = temp_file("precedence.cfg");
  {
    std::ofstream f(path);
    f << "criteria = chsh\nsteps = 3\ntheta_max = 1.5\n";
  }
  auto chsh = [](double t) { return format_g10(2.0 * std::sqrt(1.0 + std::pow(std::sin(2.0 * t), 2))); };
  const auto from_file = invoke({"sweep", "--config", path.string()});
  CHECK(from_file.code == 0);
  CHECK(from_file.out == "theta,i_chsh\n0,2\n0.75," + chsh(0.75) + "\n1.5," + chsh(1.5) + "\n");

  const auto overridden = invoke({"sweep", "--config", path.string(), "--steps", "2"});
  CHECK(overridden.out == "theta,i_chsh\n0,2\n1.5," + chsh(1.5) + "\n");
  std::filesystem::remove(path);
}

TEST_CASE("csv renderings") {
  CHECK(format_g10(2.0 * std::sqrt(2.0)) == "2.828427125");
  CHECK(format_g10(0.0) == "0");
  CHECK(format_g10(1e-12) == "1e-12");
  CHECK(format_full(0.1) == "0.10000000000000001");

  SweepResult r;
  r.thetas = {0.0, 1.0};
  r.values[Criterion::Chsh] = {2.0, 2.5};
  r.values[Criterion::Reid] = {0.0, -0.25};
  CHECK(sweep_csv(r) == "theta,i_reid,i_chsh\n0,0,2\n1,-0.25,2.5\n");

  CriterionResult e;
  e.criterion = Criterion::Reid;
  e.theta = 0.5;
  e.value = 0.125;
  e.violated = true;
  e.components = {{"var_min_x2", 0.5}, {"var_min_p2", 0.25}};
  const CriterionResult list[] = {e};
  CHECK(eval_csv(list) == "criterion,theta,value,violated,flagged,components\n"
                          "reid,0.5,0.125,true,false,var_min_p2=0.25;var_min_x2=0.5\n");

  const CriticalPoint p{Criterion::Entropic, CriticalKind::Touch, 1.5, 1.5, 1.5, 0.0};
  const CriticalPoint points[] = {p};
  CHECK(critical_csv(points) == "criterion,kind,angle,bracket_lo,bracket_hi,residual\nentropic,touch,1.5,1.5,1.5,0\n");
  CHECK(critical_summary(StateFamily::Psi, points) == "psi        entropic  touch     1.5000\n");
}

TEST_CASE("json round trip") {
  CriterionResult e;
  e.criterion = Criterion::Entropic;
  e.value = -0.5;
  e.components = {{"h_x2_given_x1", 1.25}};
  const auto back = json::parse(json(e).dump()).get<CriterionResult>();
  CHECK(back.criterion == e.criterion);
  CHECK(std::isnan(back.theta));
  CHECK(back.value == e.value);
  CHECK(back.components == e.components);

  SweepResult s;
  s.state = StateFamily::PsiPrime;
  s.thetas = {0.0, 0.1 + 0.2, std::numbers::pi};
  s.values[Criterion::Entropic] = {0.0, 1.0 / 3.0, -1e-17};
  s.criticals = {{Criterion::Entropic, CriticalKind::Crossing, 0.123456789012345, 0.1, 0.2, 3e-9}};
  s.flagged = {{Criterion::Entropic, 2}};
  CHECK(json::parse(json(s).dump()).get<SweepResult>() == s);

  HierarchyReport h;
  h.state = StateFamily::Psi;
  h.chsh_violation_region = IntervalSet({Interval::open(0.0, 1.5), Interval::open(1.5, 3.0)});
  h.reid_detected = IntervalSet({Interval{0.0, 0.6, true, false}});
  h.undetected_steering = h.chsh_violation_region.subtract(h.reid_detected);
  const auto text = json(h).dump();
  CHECK(json::parse(text).at("criteria_incomplete") == true);
  CHECK(json::parse(text).get<HierarchyReport>() == h);
}

TEST_CASE("eval command") {
  const auto chsh = invoke({"eval", "--state", "psi", "--theta", "0.7854", "--criteria", "chsh"});
  CHECK(chsh.code == 0);
  CHECK(chsh.out.find("chsh,0.7854,2.828427") != std::string::npos);

  const auto product = invoke({"eval", "--state", "psi", "--theta", "0", "--criteria", "reid,entropic", "--format",
                               "json"});
  REQUIRE(product.code == 0);
  const auto results = json::parse(product.out).at("results").get<std::vector<CriterionResult>>();
  REQUIRE(results.size() == 2);
  CHECK(results[0].criterion == Criterion::Reid);
  CHECK(std::abs(results[0].value) < 1e-12);
  CHECK(std::abs(results[1].value) < 1e-12);

  const auto out_of_range = invoke({"eval", "--theta", "4.0"});
  CHECK(out_of_range.code == kExitConfig);
  CHECK(out_of_range.err.find("theta") != std::string::npos);
}

TEST_CASE("tolerance flags map to exit 3 unless allowed") {
  const std::vector<std::string> strict{"eval", "--theta", "0.7", "--criteria", "entropic", "--max-depth", "1",
                                        "--panel-tol", "1e-14"};
  CHECK(invoke(strict).code == kExitTolerance);
  auto allowed = strict;
  allowed.push_back("--allow-flagged");
  const auto ok = invoke(allowed);
  CHECK(ok.code == 0);
  CHECK(ok.out.find(",true,") != std::string::npos);
}

TEST_CASE("sweep command") {
  const auto two = invoke({"sweep", "--steps", "2", "--criteria", "chsh,reid,entropic"});
  CHECK(two.code == 0);
  CHECK(two.out == "theta,i_reid,i_ent,i_chsh\n0,0,0,2\n3.141592654,0,0,2\n");

  const auto path = temp_file("sweep.csv");
  const std::vector<std::string> args{"sweep", "--steps", "9", "--criteria", "reid,chsh", "-o", path.string()};
  CHECK(invoke(args).code == 0);
  const auto first = slurp(path);
  CHECK(invoke(args).code == 0);
  CHECK(slurp(path) == first);
  std::filesystem::remove(path);

  CHECK(invoke({"sweep", "--steps", "3", "-o", "/nonexistent/dir/out.csv"}).code == kExitIo);
}

TEST_CASE("critical command") {
  const auto reid = invoke({"critical", "--state", "psi", "--criteria", "reid"});
  CHECK(reid.code == 0);
  CHECK(reid.out.find("crossing  0.5980") != std::string::npos);
  CHECK(reid.out.find("crossing  2.5436") != std::string::npos);
  CHECK(invoke({"critical", "--state", "psi", "--criteria", "chsh"}).code == kExitNoRoot);
}

TEST_CASE("parse failures and help") {
  CHECK(invoke({}).code == kExitConfig);
  CHECK(invoke({"frobnicate"}).code == kExitConfig);
  CHECK(invoke({"eval", "--no-such-flag"}).code == kExitConfig);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Exit codes") != std::string::npos);
}
