#pragma once

// Gauss-Hermite rules for polynomial x Gaussian moments and adaptive
// Gauss-Kronrod panels for entropy-type integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace cvsteer {

struct QuadratureSpec {
  int gh_order = 64;
  /// Truncation half-width in oscillator-length units.
  double half_width = 8.0;
  /// Absolute error target for adaptive panel integration.
  double panel_tol = 1e-10;
  int max_depth = 40;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const QuadratureSpec& spec);

class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nodes and weights for integral f(y) e^{-y^2} dy.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// weights[i] * exp(nodes[i]^2), for integrands that carry their own Gaussian.
  std::vector<double> scaled_weights;

  [[nodiscard]] std::size_t order() const { return nodes.size(); }
};

/// Golub-Welsch construction from the Hermite Jacobi matrix, followed by a
/// Newton polish of each node and Christoffel weights. Throws
/// std::invalid_argument for order < 2, ConvergenceFailure if the eigen
/// solver fails.
GaussHermiteRule gauss_hermite_rule(int order);

/// Process-wide memoized gauss_hermite_rule; safe to call concurrently.
const GaussHermiteRule& cached_gauss_hermite_rule(int order);

/// Integral of f over the real line where f already contains its Gaussian
/// factor exp(-scale * v^2).
template <class F>
double integrate_moment_1d(F&& f, const GaussHermiteRule& rule, double gaussian_scale) {
  const double inv_sqrt = 1.0 / std::sqrt(gaussian_scale);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) {
    sum += rule.scaled_weights[i] * f(rule.nodes[i] * inv_sqrt);
  }
  return sum * inv_sqrt;
}

/// Tensor-product version of integrate_moment_1d over the plane.
template <class F>
double integrate_moment_2d(F&& f, const GaussHermiteRule& rule, double gaussian_scale) {
  const double inv_sqrt = 1.0 / std::sqrt(gaussian_scale);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) {
    const double a = rule.nodes[i] * inv_sqrt;
    double row = 0.0;
    for (std::size_t j = 0; j < rule.order(); ++j) {
      row += rule.scaled_weights[j] * f(a, rule.nodes[j] * inv_sqrt);
    }
    sum += rule.scaled_weights[i] * row;
  }
  return sum * inv_sqrt * inv_sqrt;
}

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool tolerance_met = true;
  std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
};

template <class F>
Panel gauss_kronrod_15(F& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * fsum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
  }
  return Panel{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

struct PanelOrder {
  // Largest error first; ties broken by position so the split order is
  // fully deterministic.
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.lo > y.lo;
  }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
/// Breakpoints inside the interval start as panel boundaries. The panel with
/// the largest embedded-rule error is bisected until the summed error falls
/// below abs_tol; panels at max_depth are never split. If the target is
/// missed the best estimate is returned with tolerance_met = false.
template <class F>
IntegrationResult integrate_adaptive(F&& f, double lo, double hi, double abs_tol, int max_depth,
                                     std::span<const double> breakpoints = {}) {
  std::vector<double> edges{lo};
  std::vector<double> inner(breakpoints.begin(), breakpoints.end());
  std::sort(inner.begin(), inner.end());
  for (double b : inner) {
    if (b > edges.back() && b < hi) edges.push_back(b);
  }
  edges.push_back(hi);

  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelOrder> open;
  std::vector<detail::Panel> frozen;
  IntegrationResult result;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto panel = detail::gauss_kronrod_15(f, edges[i], edges[i + 1], 0);
    result.evaluations += 15;
    total_error += panel.error;
    open.push(panel);
  }

  while (total_error > abs_tol && !open.empty()) {
    detail::Panel worst = open.top();
    open.pop();
    if (worst.depth >= max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    auto left = detail::gauss_kronrod_15(f, worst.lo, mid, worst.depth + 1);
    auto right = detail::gauss_kronrod_15(f, mid, worst.hi, worst.depth + 1);
    result.evaluations += 30;
    total_error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }

  std::vector<detail::Panel> panels = std::move(frozen);
  while (!open.empty()) {
    panels.push_back(open.top());
    open.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.lo < y.lo; });
  double error = 0.0;
  for (const auto& p : panels) {
    result.value += p.value;
    error += p.error;
  }
  result.error_estimate = error;
  result.tolerance_met = error <= abs_tol;
  return result;
}

/// Whether the outer integrand is known to be even, in which case only
/// [0, half_width] is integrated and the result doubled.
enum class OuterSymmetry { None, Even };

/// -g ln g with 0 ln 0 = 0 for g below the density floor. Never NaN.
inline double entropy_density(double g) {
  constexpr double floor = 1e-300;
  return g < floor ? 0.0 : -g * std::log(g);
}

/// -integral g ln g over [-half_width, half_width]. Known zeros of g may be
/// passed as breakpoints to restore fast convergence near the logarithmic
/// singularity of ln g.
template <class G>
IntegrationResult integrate_entropy_1d(G&& g, const QuadratureSpec& spec,
                                       std::span<const double> breakpoints = {},
                                       OuterSymmetry symmetry = OuterSymmetry::None) {
  const double L = spec.half_width;
  auto integrand = [&](double v) { return entropy_density(g(v)); };
  if (symmetry == OuterSymmetry::Even) {
    auto r = integrate_adaptive(integrand, 0.0, L, 0.5 * spec.panel_tol, spec.max_depth, breakpoints);
    r.value *= 2.0;
    r.error_estimate *= 2.0;
    return r;
  }
  return integrate_adaptive(integrand, -L, L, spec.panel_tol, spec.max_depth, breakpoints);
}

/// One inner line of a 2-D entropy integral: the density restricted to a
/// fixed outer coordinate plus its known zeros.
template <class F>
struct SliceIntegrand {
  F density;
  std::vector<double> breaks;
};

template <class F>
SliceIntegrand(F, std::vector<double>) -> SliceIntegrand<F>;

/// -double integral g ln g over [-half_width, half_width]^2 by iterated
/// adaptive integration. make_slice(a) returns the inner line at outer
/// coordinate a; inner results are cached per outer node within the call.
template <class MakeSlice>
IntegrationResult integrate_entropy_2d_sliced(MakeSlice&& make_slice, const QuadratureSpec& spec,
                                              std::span<const double> outer_breaks = {},
                                              OuterSymmetry symmetry = OuterSymmetry::None) {
  const double L = spec.half_width;
  // The summed inner error must stay well inside the outer budget.
  const double inner_tol = spec.panel_tol / (8.0 * L);
  bool inner_ok = true;
  std::size_t inner_evals = 0;
  std::unordered_map<double, double> cache;
  auto outer = [&](double a) {
    if (auto it = cache.find(a); it != cache.end()) return it->second;
    const auto slice = make_slice(a);
    auto r = integrate_adaptive([&](double b) { return entropy_density(slice.density(b)); }, -L, L, inner_tol,
                                spec.max_depth, std::span<const double>(slice.breaks));
    inner_ok = inner_ok && r.tolerance_met;
    inner_evals += r.evaluations;
    cache.emplace(a, r.value);
    return r.value;
  };
  IntegrationResult result;
  if (symmetry == OuterSymmetry::Even) {
    result = integrate_adaptive(outer, 0.0, L, 0.5 * spec.panel_tol, spec.max_depth, outer_breaks);
    result.value *= 2.0;
    result.error_estimate *= 2.0;
  } else {
    result = integrate_adaptive(outer, -L, L, spec.panel_tol, spec.max_depth, outer_breaks);
  }
  result.tolerance_met = result.tolerance_met && inner_ok;
  result.evaluations += inner_evals;
  return result;
}

/// Generic form of integrate_entropy_2d_sliced for a density g(a, b) on the
/// plane; inner_breaks(a) lists the zeros of g(a, .).
template <class G, class InnerBreaks>
IntegrationResult integrate_entropy_2d(G&& g, InnerBreaks&& inner_breaks, const QuadratureSpec& spec,
                                       std::span<const double> outer_breaks = {}) {
  return integrate_entropy_2d_sliced(
      [&](double a) {
        return SliceIntegrand{[&g, a](double b) { return g(a, b); }, std::vector<double>(inner_breaks(a))};
      },
      spec, outer_breaks);
}

/// integrate_entropy_2d without known zeros.
template <class G>
IntegrationResult integrate_entropy_2d(G&& g, const QuadratureSpec& spec) {
  return integrate_entropy_2d(g, [](double) { return std::vector<double>{}; }, spec);
}

}  // namespace cvsteer
