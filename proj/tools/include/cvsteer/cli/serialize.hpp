#pragma once

// CSV and JSON renderings of library results. CSV floats use at most 10
// significant digits; JSON keeps full round-trip precision.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvsteer/criteria.hpp"
#include "cvsteer/intervals.hpp"
#include "cvsteer/sweep.hpp"

namespace cvsteer {

// Enumerations travel as their lower-case names.
void to_json(nlohmann::json& j, Criterion c);
void from_json(const nlohmann::json& j, Criterion& c);
void to_json(nlohmann::json& j, StateFamily s);
void from_json(const nlohmann::json& j, StateFamily& s);
void to_json(nlohmann::json& j, CriticalKind k);
void from_json(const nlohmann::json& j, CriticalKind& k);

/// theta may be NaN; it is written as null and read back as NaN.
void to_json(nlohmann::json& j, const CriterionResult& r);
void from_json(const nlohmann::json& j, CriterionResult& r);
void to_json(nlohmann::json& j, const CriticalPoint& p);
void from_json(const nlohmann::json& j, CriticalPoint& p);
void to_json(nlohmann::json& j, const FlaggedPoint& p);
void from_json(const nlohmann::json& j, FlaggedPoint& p);
void to_json(nlohmann::json& j, const Interval& iv);
void from_json(const nlohmann::json& j, Interval& iv);
void to_json(nlohmann::json& j, const IntervalSet& s);
void from_json(const nlohmann::json& j, IntervalSet& s);
void to_json(nlohmann::json& j, const SweepResult& r);
void from_json(const nlohmann::json& j, SweepResult& r);
void to_json(nlohmann::json& j, const HierarchyReport& r);
void from_json(const nlohmann::json& j, HierarchyReport& r);

}  // namespace cvsteer

namespace cvsteer::cli {

/// %.10g
std::string format_g10(double v);
/// %.17g, enough to recover the double exactly.
std::string format_full(double v);

/// CSV column name of a criterion: i_reid, i_ent or i_chsh.
std::string_view csv_column(Criterion c);

/// theta,i_reid,i_ent,i_chsh with absent criteria left out.
std::string sweep_csv(const SweepResult& r);

/// criterion,theta,value,violated,flagged,components. Components are
/// key=value pairs joined by ';'.
std::string eval_csv(std::span<const CriterionResult> results);

/// criterion,kind,angle,bracket_lo,bracket_hi,residual at full precision.
std::string critical_csv(std::span<const CriticalPoint> points);

/// One line per point with the angle to 4 decimals.
std::string critical_summary(StateFamily state, std::span<const CriticalPoint> points);

}  // namespace cvsteer::cli
