#include "cvsteer/cli/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace cvsteer {

using nlohmann::json;

void to_json(json& j, Criterion c) { j = std::string(to_string(c)); }
void from_json(const json& j, Criterion& c) { c = criterion_from_string(j.get<std::string>()); }
void to_json(json& j, StateFamily s) { j = std::string(to_string(s)); }
void from_json(const json& j, StateFamily& s) { s = state_family_from_string(j.get<std::string>()); }
void to_json(json& j, CriticalKind k) { j = std::string(to_string(k)); }
void from_json(const json& j, CriticalKind& k) {
  const auto name = j.get<std::string>();
  if (name == "crossing") {
    k = CriticalKind::Crossing;
  } else if (name == "touch") {
    k = CriticalKind::Touch;
  } else {
    throw std::invalid_argument("unknown critical kind '" + name + "'");
  }
}

namespace {

json nullable(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double from_nullable(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

}  // namespace

void to_json(json& j, const CriterionResult& r) {
  j = json{{"criterion", r.criterion}, {"theta", nullable(r.theta)},  {"value", r.value},
           {"violated", r.violated},   {"flagged", r.flagged},         {"components", json::object()}};
  for (const auto& [k, v] : r.components) j["components"][k] = v;
}

void from_json(const json& j, CriterionResult& r) {
  j.at("criterion").get_to(r.criterion);
  r.theta = from_nullable(j.at("theta"));
  j.at("value").get_to(r.value);
  j.at("violated").get_to(r.violated);
  j.at("flagged").get_to(r.flagged);
  r.components.clear();
  for (const auto& [k, v] : j.at("components").items()) r.components.emplace(k, v.get<double>());
}

void to_json(json& j, const CriticalPoint& p) {
  j = json{{"criterion", p.criterion},   {"kind", p.kind},           {"angle", p.angle},
           {"bracket_lo", p.bracket_lo}, {"bracket_hi", p.bracket_hi}, {"residual", p.residual}};
}

void from_json(const json& j, CriticalPoint& p) {
  j.at("criterion").get_to(p.criterion);
  j.at("kind").get_to(p.kind);
  j.at("angle").get_to(p.angle);
  j.at("bracket_lo").get_to(p.bracket_lo);
  j.at("bracket_hi").get_to(p.bracket_hi);
  j.at("residual").get_to(p.residual);
}

void to_json(json& j, const FlaggedPoint& p) { j = json{{"criterion", p.criterion}, {"index", p.index}}; }
void from_json(const json& j, FlaggedPoint& p) {
  j.at("criterion").get_to(p.criterion);
  j.at("index").get_to(p.index);
}

void to_json(json& j, const Interval& iv) {
  j = json{{"lo", iv.lo}, {"hi", iv.hi}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}
void from_json(const json& j, Interval& iv) {
  j.at("lo").get_to(iv.lo);
  j.at("hi").get_to(iv.hi);
  j.at("lo_closed").get_to(iv.lo_closed);
  j.at("hi_closed").get_to(iv.hi_closed);
}

void to_json(json& j, const IntervalSet& s) { j = s.parts(); }
void from_json(const json& j, IntervalSet& s) { s = IntervalSet(j.get<std::vector<Interval>>()); }

void to_json(json& j, const SweepResult& r) {
  j = json{{"state", r.state}, {"thetas", r.thetas}, {"values", json::object()}, {"criticals", r.criticals},
           {"flagged", r.flagged}};
  for (const auto& [c, column] : r.values) j["values"][std::string(to_string(c))] = column;
}

void from_json(const json& j, SweepResult& r) {
  j.at("state").get_to(r.state);
  j.at("thetas").get_to(r.thetas);
  r.values.clear();
  for (const auto& [k, v] : j.at("values").items()) r.values[criterion_from_string(k)] = v.get<std::vector<double>>();
  j.at("criticals").get_to(r.criticals);
  j.at("flagged").get_to(r.flagged);
}

void to_json(json& j, const HierarchyReport& r) {
  j = json{{"state", r.state},
           {"chsh_violation_region", r.chsh_violation_region},
           {"reid_detected", r.reid_detected},
           {"entropic_detected", r.entropic_detected},
           {"undetected_steering", r.undetected_steering},
           {"criteria_incomplete", r.criteria_incomplete()},
           {"criticals", r.criticals}};
}

void from_json(const json& j, HierarchyReport& r) {
  j.at("state").get_to(r.state);
  j.at("chsh_violation_region").get_to(r.chsh_violation_region);
  j.at("reid_detected").get_to(r.reid_detected);
  j.at("entropic_detected").get_to(r.entropic_detected);
  j.at("undetected_steering").get_to(r.undetected_steering);
  j.at("criticals").get_to(r.criticals);
}

}  // namespace cvsteer

namespace cvsteer::cli {

std::string format_g10(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view csv_column(Criterion c) {
  switch (c) {
    case Criterion::Reid: return "i_reid";
    case Criterion::Entropic: return "i_ent";
    case Criterion::Chsh: return "i_chsh";
  }
  return "?";
}

std::string sweep_csv(const SweepResult& r) {
  // std::map keeps Reid, Entropic, Chsh order whatever was requested.
  std::string out = "theta";
  for (const auto& [c, column] : r.values) {
    out += ',';
    out += csv_column(c);
  }
  out += '\n';
  for (std::size_t i = 0; i < r.thetas.size(); ++i) {
    out += format_g10(r.thetas[i]);
    for (const auto& [c, column] : r.values) {
      out += ',';
      out += format_g10(column[i]);
    }
    out += '\n';
  }
  return out;
}

std::string eval_csv(std::span<const CriterionResult> results) {
  std::string out = "criterion,theta,value,violated,flagged,components\n";
  for (const auto& r : results) {
    out += std::string(to_string(r.criterion)) + ',' + format_g10(r.theta) + ',' + format_g10(r.value) + ',' +
           (r.violated ? "true" : "false") + ',' + (r.flagged ? "true" : "false") + ',';
    bool first = true;
    for (const auto& [k, v] : r.components) {
      if (!first) out += ';';
      out += k + '=' + format_g10(v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::string critical_csv(std::span<const CriticalPoint> points) {
  std::string out = "criterion,kind,angle,bracket_lo,bracket_hi,residual\n";
  for (const auto& p : points) {
    out += std::string(to_string(p.criterion)) + ',' + std::string(to_string(p.kind)) + ',' + format_full(p.angle) +
           ',' + format_full(p.bracket_lo) + ',' + format_full(p.bracket_hi) + ',' + format_full(p.residual) + '\n';
  }
  return out;
}

std::string critical_summary(StateFamily state, std::span<const CriticalPoint> points) {
  std::string out;
  char buf[96];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%-10s %-9s %-9s %.4f\n", std::string(to_string(state)).c_str(),
                  std::string(to_string(p.criterion)).c_str(), std::string(to_string(p.kind)).c_str(), p.angle);
    out += buf;
  }
  return out;
}

}  // namespace cvsteer::cli
