#include "cvsteer/intervals.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace cvsteer {

bool Interval::empty() const {
  if (lo > hi) return true;
  return lo == hi && !(lo_closed && hi_closed);
}

bool Interval::contains(double x) const {
  if (empty()) return false;
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

std::string to_string(const Interval& iv) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%c%.6f, %.6f%c", iv.lo_closed ? '[' : '(', iv.lo, iv.hi, iv.hi_closed ? ']' : ')');
  return buf;
}

namespace {

Interval intersect(const Interval& a, const Interval& b) {
  Interval out;
  if (a.lo > b.lo) {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed && b.hi_closed;
  }
  return out;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& iv) { return iv.empty(); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  for (const auto& iv : parts) {
    if (!parts_.empty()) {
      auto& last = parts_.back();
      const bool overlaps = iv.lo < last.hi || (iv.lo == last.hi && (last.hi_closed || iv.lo_closed));
      if (overlaps) {
        if (iv.hi > last.hi) {
          last.hi = iv.hi;
          last.hi_closed = iv.hi_closed;
        } else if (iv.hi == last.hi) {
          last.hi_closed = last.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    parts_.push_back(iv);
  }
}

bool IntervalSet::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(), [x](const Interval& iv) { return iv.contains(x); });
}

bool IntervalSet::contains(const Interval& iv) const { return IntervalSet({iv}).is_subset_of(*this); }

double IntervalSet::measure() const {
  double total = 0.0;
  for (const auto& iv : parts_) total += iv.length();
  return total;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    for (const auto& b : other.parts_) out.push_back(cvsteer::intersect(a, b));
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<Interval> out;
  double cursor = -inf;
  bool cursor_closed = false;
  for (const auto& iv : parts_) {
    out.push_back({cursor, iv.lo, cursor_closed, !iv.lo_closed});
    cursor = iv.hi;
    cursor_closed = !iv.hi_closed;
  }
  out.push_back({cursor, inf, cursor_closed, false});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const { return intersect(other.complement()); }

bool IntervalSet::is_subset_of(const IntervalSet& other) const { return subtract(other).empty(); }

std::string to_string(const IntervalSet& set) {
  if (set.empty()) return "{}";
  std::string out;
  for (const auto& iv : set.parts()) {
    if (!out.empty()) out += " U ";
    out += to_string(iv);
  }
  return out;
}

}  // namespace cvsteer
