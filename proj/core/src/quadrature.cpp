#include "cvsteer/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace cvsteer {

void validate(const QuadratureSpec& spec) {
  if (spec.gh_order < 2 || spec.gh_order > 1024) {
    throw std::invalid_argument("gh_order must lie in [2, 1024]");
  }
  if (!(spec.half_width > 0.0) || !std::isfinite(spec.half_width)) {
    throw std::invalid_argument("L (half_width) must be finite and positive");
  }
  if (!(spec.panel_tol > 0.0 && spec.panel_tol < 1.0)) {
    throw std::invalid_argument("panel_tol must lie in (0, 1)");
  }
  if (spec.max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
}

namespace {

// Orthonormal Hermite polynomials p_{n-1}(y), p_n(y) (no Gaussian factor) by
// upward recurrence, rescaled on the fly; the true values are the returned
// pair times exp(log_scale).
struct TopPolynomials {
  double lower;
  double top;
  double log_scale;
};

TopPolynomials top_hermite_polynomials(int n, double y) {
  constexpr double kRescale = 1e150;
  double prev = 0.0;
  double curr = std::pow(std::numbers::pi, -0.25);
  double log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * y * curr - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = curr;
    curr = next;
    if (std::abs(curr) > kRescale) {
      prev /= kRescale;
      curr /= kRescale;
      log_scale += std::log(kRescale);
    }
  }
  return {prev, curr, log_scale};
}

}  // namespace

GaussHermiteRule gauss_hermite_rule(int order) {
  if (order < 2) throw std::invalid_argument("gauss_hermite_rule: order must be >= 2");
  const auto n = static_cast<Eigen::Index>(order);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * static_cast<double>(k));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("gauss_hermite_rule: tridiagonal eigen-solve failed for order " +
                             std::to_string(order));
  }

  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  rule.scaled_weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double y = solver.eigenvalues()[i];
    // p_n' = sqrt(2n) p_{n-1}.
    for (int iter = 0; iter < 3; ++iter) {
      const auto p = top_hermite_polynomials(order, y);
      y -= p.top / (std::sqrt(2.0 * order) * p.lower);
    }
    rule.nodes[i] = y;
  }
  // Enforce exact symmetry about the origin.
  for (int i = 0; i < order / 2; ++i) {
    const double r = 0.5 * (rule.nodes[order - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -r;
    rule.nodes[order - 1 - i] = r;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;

  for (int i = 0; i < order; ++i) {
    const double y = rule.nodes[i];
    const auto p = top_hermite_polynomials(order, y);
    // Christoffel number 1 / (n p_{n-1}^2).
    const double log_weight = -2.0 * (std::log(std::abs(p.lower)) + p.log_scale) - std::log(order);
    rule.weights[i] = std::exp(log_weight);
    rule.scaled_weights[i] = std::exp(log_weight + y * y);
  }
  return rule;
}

const GaussHermiteRule& cached_gauss_hermite_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(gauss_hermite_rule(order));
  return *slot;
}

}  // namespace cvsteer
