#pragma once

// Theta sweeps over the two state families, location of critical angles and
// the Bell / steering hierarchy report built from them.

#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "cvsteer/criteria.hpp"
#include "cvsteer/fock.hpp"
#include "cvsteer/intervals.hpp"
#include "cvsteer/quadrature.hpp"

namespace cvsteer {

class NoRootInRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |value - bound| at or below this counts as touching the bound.
inline constexpr double kTouchTolerance = 1e-9;

/// Step of the bracketing scan used by find_critical_angles.
inline constexpr double kScanStep = 0.01;

enum class CriticalKind { Crossing, Touch };

std::string_view to_string(CriticalKind kind);

struct CriticalPoint {
  Criterion criterion = Criterion::Reid;
  CriticalKind kind = CriticalKind::Crossing;
  double angle = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// |value(angle) - bound|
  double residual = 0.0;

  friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

struct SweepOptions {
  double theta_min = 0.0;
  double theta_max = std::numbers::pi;
  double root_tol = 1e-6;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  bool locate_criticals = true;
  UnitSystem units{};
};

struct FlaggedPoint {
  Criterion criterion = Criterion::Reid;
  std::size_t index = 0;

  friend bool operator==(const FlaggedPoint&, const FlaggedPoint&) = default;
};

struct SweepResult {
  StateFamily state = StateFamily::Psi;
  std::vector<double> thetas;
  std::map<Criterion, std::vector<double>> values;
  std::vector<CriticalPoint> criticals;
  std::vector<FlaggedPoint> flagged;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Uniform grid of n_points over [lo, hi] with both endpoints exact.
std::vector<double> uniform_grid(double lo, double hi, int n_points);

/// The bracketing grid 0, step, 2 step, ... with pi appended.
std::vector<double> scan_grid(double lo, double hi, double step);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results land by
/// index so the output never depends on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn);

/// Angles at which the named families reduce to product states.
std::vector<double> product_angles();

/// Zeros of f on a sampled grid: sign changes are bisected to width
/// root_tol; points where |f| dips to kTouchTolerance without changing sign
/// are refined (anchors first, then golden section) and reported as touches
/// with zero-width brackets.
std::vector<CriticalPoint> locate_critical_points(Criterion criterion, const std::function<double(double)>& f,
                                                  std::span<const double> grid, std::span<const double> values,
                                                  double root_tol, std::span<const double> anchors = {});

/// Evaluates each criterion on a uniform grid of n_points over
/// [theta_min, theta_max]; with locate_criticals the crossings and touches
/// of each curve are located on the same grid.
SweepResult sweep(StateFamily state, std::span<const Criterion> criteria, int n_points, const QuadratureSpec& spec,
                  const SweepOptions& options = {});

/// Every crossing and touch of the criterion on [0, pi], scanned at
/// kScanStep. Throws NoRootInRange when the curve never changes sign.
std::vector<CriticalPoint> find_critical_angles(StateFamily state, Criterion criterion, const QuadratureSpec& spec,
                                                double root_tol = 1e-6, const SweepOptions& options = {});

struct HierarchyReport {
  StateFamily state = StateFamily::Psi;
  IntervalSet chsh_violation_region;
  IntervalSet reid_detected;
  IntervalSet entropic_detected;
  /// CHSH-violating angles at which neither steering criterion fires.
  IntervalSet undetected_steering;
  std::vector<CriticalPoint> criticals;

  [[nodiscard]] bool criteria_incomplete() const { return !undetected_steering.empty(); }

  friend bool operator==(const HierarchyReport&, const HierarchyReport&) = default;
};

/// Region of [theta_min, theta_max] where a swept criterion is violated,
/// bounded by its located critical points.
IntervalSet violation_region(const SweepResult& result, Criterion criterion,
                             const std::function<double(double)>& evaluate_at);

HierarchyReport hierarchy_report(StateFamily state, const QuadratureSpec& spec, int n_points = 315,
                                 const SweepOptions& options = {});

}  // namespace cvsteer

#include "cvsteer/detail/parallel.hpp"
