#include "cvsteer/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvsteer {

std::vector<double> hermite_series_to_monomial(std::span<const double> weights) {
  if (weights.empty()) return {};
  const std::size_t n = weights.size();
  // Coefficients of the normalized Hermite polynomials h_k, built from
  // h_{k+1} = sqrt(2/(k+1)) y h_k - sqrt(k/(k+1)) h_{k-1}.
  std::vector<double> prev;
  std::vector<double> curr{std::pow(std::numbers::pi, -0.25)};
  std::vector<double> out(n, 0.0);
  out[0] += weights[0] * curr[0];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<double> next(curr.size() + 1, 0.0);
    const double up = std::sqrt(2.0 / static_cast<double>(k + 1));
    const double down = std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
    for (std::size_t j = 0; j < curr.size(); ++j) next[j + 1] += up * curr[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= down * prev[j];
    prev = std::move(curr);
    curr = std::move(next);
    for (std::size_t j = 0; j < curr.size(); ++j) out[j] += weights[k + 1] * curr[j];
  }
  return out;
}

std::optional<std::vector<double>> strip_global_phase(std::span<const std::complex<double>> coeffs) {
  double largest = 0.0;
  std::complex<double> pivot{1.0, 0.0};
  for (const auto& c : coeffs) {
    if (std::abs(c) > largest) {
      largest = std::abs(c);
      pivot = c;
    }
  }
  std::vector<double> real(coeffs.size(), 0.0);
  if (largest == 0.0) return real;
  const auto rotate = std::conj(pivot) / largest;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto r = coeffs[i] * rotate;
    if (std::abs(r.imag()) > 1e-13 * largest) return std::nullopt;
    real[i] = r.real();
  }
  return real;
}

double evaluate_polynomial(std::span<const double> coeffs, double y) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

std::vector<double> real_roots(std::span<const double> coeffs) {
  double largest = 0.0;
  for (double c : coeffs) largest = std::max(largest, std::abs(c));
  if (largest == 0.0) return {};
  std::size_t degree = coeffs.size() - 1;
  while (degree > 0 && std::abs(coeffs[degree]) <= 1e-14 * largest) --degree;

  std::vector<double> roots;
  if (degree == 0) return roots;
  if (degree == 1) {
    roots.push_back(-coeffs[0] / coeffs[1]);
  } else if (degree == 2) {
    const double a = coeffs[2], b = coeffs[1], c = coeffs[0];
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
      } else {
        roots.push_back(0.0);
        roots.push_back(0.0);
      }
    }
  } else {
    const auto d = static_cast<Eigen::Index>(degree);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -coeffs[i] / coeffs[degree];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(ev[i].imag()) <= 1e-10 * (1.0 + std::abs(ev[i].real()))) roots.push_back(ev[i].real());
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x)); }),
              roots.end());
  return roots;
}

}  // namespace cvsteer
