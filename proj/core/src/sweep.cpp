#include "cvsteer/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cvsteer {

std::string_view to_string(CriticalKind kind) { return kind == CriticalKind::Crossing ? "crossing" : "touch"; }

std::vector<double> uniform_grid(double lo, double hi, int n_points) {
  if (n_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(lo < hi)) throw std::invalid_argument("grid needs lo < hi");
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  const double span = hi - lo;
  const int last = n_points - 1;
  for (int k = 0; k <= last; ++k) grid[k] = lo + span * k / last;
  grid.back() = hi;
  return grid;
}

std::vector<double> scan_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo < hi)) throw std::invalid_argument("scan_grid: need step > 0 and lo < hi");
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double t = lo + k * step;
    if (t >= hi - 1e-9 * step) break;
    grid.push_back(t);
  }
  grid.push_back(hi);
  return grid;
}

std::vector<double> product_angles() { return {0.0, std::numbers::pi / 2, std::numbers::pi}; }

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

CriticalPoint bisect(Criterion criterion, const std::function<double(double)>& f, double lo, double hi,
                     double f_lo, double root_tol) {
  const int s_lo = sign_of(f_lo);
  while (hi - lo > root_tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (sign_of(fm) == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double angle = 0.5 * (lo + hi);
  return {criterion, CriticalKind::Crossing, angle, lo, hi, std::abs(f(angle))};
}

// Minimizes |f| on [lo, hi] by golden-section search.
std::pair<double, double> golden_min_abs(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = std::abs(f(c));
  double fd = std::abs(f(d));
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = std::abs(f(c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = std::abs(f(d));
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

std::vector<CriticalPoint> locate_critical_points(Criterion criterion, const std::function<double(double)>& f,
                                                  std::span<const double> grid, std::span<const double> values,
                                                  double root_tol, std::span<const double> anchors) {
  if (grid.size() != values.size()) throw std::invalid_argument("locate_critical_points: grid/value size mismatch");
  if (!(root_tol > 0.0)) throw std::invalid_argument("root_tol must be positive");
  const std::size_t n = grid.size();
  auto near_zero = [](double v) { return std::abs(v) <= kTouchTolerance; };

  std::vector<CriticalPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!near_zero(values[i])) continue;
    const bool interior = i > 0 && i + 1 < n;
    const bool crossing = interior && !near_zero(values[i - 1]) && !near_zero(values[i + 1]) &&
                          sign_of(values[i - 1]) != sign_of(values[i + 1]);
    out.push_back({criterion, crossing ? CriticalKind::Crossing : CriticalKind::Touch, grid[i], grid[i], grid[i],
                   std::abs(values[i])});
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (near_zero(values[i]) || near_zero(values[i + 1])) continue;
    if (sign_of(values[i]) != sign_of(values[i + 1])) {
      out.push_back(bisect(criterion, f, grid[i], grid[i + 1], values[i], root_tol));
    }
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double l = values[i - 1], m = values[i], r = values[i + 1];
    if (near_zero(l) || near_zero(m) || near_zero(r)) continue;
    if (sign_of(l) != sign_of(m) || sign_of(m) != sign_of(r)) continue;
    if (std::abs(m) > std::abs(l) || std::abs(m) > std::abs(r)) continue;
    const double lo = grid[i - 1], hi = grid[i + 1];

    bool anchored = false;
    for (double a : anchors) {
      if (a <= lo || a >= hi) continue;
      const double fa = std::abs(f(a));
      if (fa <= kTouchTolerance) {
        out.push_back({criterion, CriticalKind::Touch, a, a, a, fa});
        anchored = true;
        break;
      }
    }
    if (anchored) continue;
    const auto [angle, residual] = golden_min_abs(f, lo, hi, root_tol);
    if (residual <= kTouchTolerance) out.push_back({criterion, CriticalKind::Touch, angle, angle, angle, residual});
  }

  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) { return a.angle < b.angle; });
  out.erase(std::unique(out.begin(), out.end(),
                        [root_tol](const CriticalPoint& a, const CriticalPoint& b) {
                          return std::abs(a.angle - b.angle) <= root_tol;
                        }),
            out.end());
  return out;
}

namespace {

std::function<double(double)> offset_evaluator(StateFamily state, Criterion criterion, const QuadratureSpec& spec,
                                               const UnitSystem& units) {
  return [=](double theta) { return evaluate(criterion, state, theta, spec, units).value - classical_bound(criterion); };
}

}  // namespace

SweepResult sweep(StateFamily state, std::span<const Criterion> criteria, int n_points, const QuadratureSpec& spec,
                  const SweepOptions& options) {
  validate(spec);
  validate(options.units);
  if (criteria.empty()) throw std::invalid_argument("sweep: no criteria requested");

  SweepResult result;
  result.state = state;
  result.thetas = uniform_grid(options.theta_min, options.theta_max, n_points);

  std::vector<Criterion> ordered(criteria.begin(), criteria.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  const std::size_t n = result.thetas.size();
  const auto evaluated = parallel_map<CriterionResult>(
      n * ordered.size(), options.threads, [&](std::size_t task) {
        return evaluate(ordered[task / n], state, result.thetas[task % n], spec, options.units);
      });

  const auto anchors = product_angles();
  for (std::size_t c = 0; c < ordered.size(); ++c) {
    const Criterion criterion = ordered[c];
    auto& column = result.values[criterion];
    column.reserve(n);
    std::vector<double> offsets;
    offsets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = evaluated[c * n + i];
      column.push_back(r.value);
      offsets.push_back(r.value - classical_bound(criterion));
      if (r.flagged) result.flagged.push_back({criterion, i});
    }
    if (options.locate_criticals) {
      const auto found = locate_critical_points(criterion, offset_evaluator(state, criterion, spec, options.units),
                                                result.thetas, offsets, options.root_tol, anchors);
      result.criticals.insert(result.criticals.end(), found.begin(), found.end());
    }
  }
  return result;
}

std::vector<CriticalPoint> find_critical_angles(StateFamily state, Criterion criterion, const QuadratureSpec& spec,
                                                double root_tol, const SweepOptions& options) {
  validate(spec);
  validate(options.units);
  const auto grid = scan_grid(0.0, std::numbers::pi, kScanStep);
  const auto f = offset_evaluator(state, criterion, spec, options.units);
  const auto offsets = parallel_map<double>(grid.size(), options.threads, [&](std::size_t i) { return f(grid[i]); });
  auto found = locate_critical_points(criterion, f, grid, offsets, root_tol, product_angles());
  const bool any_crossing =
      std::any_of(found.begin(), found.end(), [](const CriticalPoint& p) { return p.kind == CriticalKind::Crossing; });
  if (!any_crossing) {
    throw NoRootInRange(std::string(to_string(criterion)) + " never crosses its bound for state " +
                        std::string(to_string(state)));
  }
  return found;
}

IntervalSet violation_region(const SweepResult& result, Criterion criterion,
                             const std::function<double(double)>& evaluate_at) {
  const auto& values = result.values.at(criterion);
  const auto& thetas = result.thetas;
  const double bound = classical_bound(criterion);

  std::vector<double> breaks{thetas.front(), thetas.back()};
  for (const auto& p : result.criticals) {
    if (p.criterion == criterion) breaks.push_back(p.angle);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<Interval> parts;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    int sign = 0;
    for (std::size_t i = 0; i < thetas.size() && sign == 0; ++i) {
      if (thetas[i] > lo && thetas[i] < hi && std::abs(values[i] - bound) > kTouchTolerance) {
        sign = sign_of(values[i] - bound);
      }
    }
    if (sign == 0) sign = sign_of(evaluate_at(0.5 * (lo + hi)) - bound);
    if (sign > 0) parts.push_back(Interval::open(lo, hi));
  }
  // Domain endpoints belong to the region only if violated there.
  if (values.front() - bound > kTouchTolerance) parts.push_back(Interval::point(thetas.front()));
  if (values.back() - bound > kTouchTolerance) parts.push_back(Interval::point(thetas.back()));
  return IntervalSet(std::move(parts));
}

HierarchyReport hierarchy_report(StateFamily state, const QuadratureSpec& spec, int n_points,
                                 const SweepOptions& options) {
  SweepOptions opts = options;
  opts.locate_criticals = true;
  const Criterion all[] = {Criterion::Reid, Criterion::Entropic, Criterion::Chsh};
  const auto swept = sweep(state, all, n_points, spec, opts);

  auto region = [&](Criterion c) {
    return violation_region(swept, c, [&](double theta) { return evaluate(c, state, theta, spec, opts.units).value; });
  };
  HierarchyReport report;
  report.state = state;
  report.reid_detected = region(Criterion::Reid);
  report.entropic_detected = region(Criterion::Entropic);
  report.chsh_violation_region = region(Criterion::Chsh);
  report.undetected_steering =
      report.chsh_violation_region.subtract(report.reid_detected.unite(report.entropic_detected));
  report.criticals = swept.criticals;
  return report;
}

}  // namespace cvsteer
