#pragma once

#include <string>
#include <vector>

namespace cvsteer {

/// Real interval with independently open or closed ends. A degenerate
/// closed interval [p, p] is the single point p.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval point(double p) { return {p, p, true, true}; }

  [[nodiscard]] bool empty() const;
  [[nodiscard]] bool contains(double x) const;
  [[nodiscard]] double length() const { return empty() ? 0.0 : hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv);

/// Sorted union of pairwise disjoint, non-adjacent intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  [[nodiscard]] const std::vector<Interval>& parts() const { return parts_; }
  [[nodiscard]] bool empty() const { return parts_.empty(); }
  [[nodiscard]] bool contains(double x) const;
  /// True when every point of iv lies in the set.
  [[nodiscard]] bool contains(const Interval& iv) const;
  [[nodiscard]] double measure() const;

  [[nodiscard]] IntervalSet unite(const IntervalSet& other) const;
  [[nodiscard]] IntervalSet intersect(const IntervalSet& other) const;
  [[nodiscard]] IntervalSet subtract(const IntervalSet& other) const;
  /// Complement relative to the whole real line.
  [[nodiscard]] IntervalSet complement() const;
  [[nodiscard]] bool is_subset_of(const IntervalSet& other) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

std::string to_string(const IntervalSet& set);

}  // namespace cvsteer
