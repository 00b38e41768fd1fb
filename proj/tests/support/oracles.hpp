#pragma once

// Test-only reference computations. Nothing here calls into the library's
// quadrature or Hermite code, so agreement is an independent check.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Composite trapezoid rule; spectrally accurate for smooth integrands that
/// decay like Gaussians well inside [lo, hi].
inline double trapezoid(const std::function<double(double)>& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double sum = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < panels; ++i) sum += f(lo + i * h);
  return sum * h;
}

inline double trapezoid_2d(const std::function<double(double, double)>& f, double lo, double hi, int panels) {
  return trapezoid([&](double a) { return trapezoid([&](double b) { return f(a, b); }, lo, hi, panels); }, lo, hi,
                   panels);
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}
}  // namespace detail

/// Recursive adaptive Simpson with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps,
                               int max_depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, eps, max_depth);
}

/// Explicit physicists' Hermite polynomials up to degree 5.
inline double hermite_symbolic(int n, double y) {
  switch (n) {
    case 0: return 1.0;
    case 1: return 2.0 * y;
    case 2: return 4.0 * y * y - 2.0;
    case 3: return 8.0 * y * y * y - 12.0 * y;
    case 4: return 16.0 * std::pow(y, 4) - 48.0 * y * y + 12.0;
    case 5: return 32.0 * std::pow(y, 5) - 160.0 * std::pow(y, 3) + 120.0 * y;
    default: return std::nan("");
  }
}

/// Oscillator eigenfunction with m*omega = s, from the explicit polynomial.
inline double eigenfunction(int n, double x, double s = 1.0) {
  const double norm = std::pow(s / std::numbers::pi, 0.25) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0));
  return norm * hermite_symbolic(n, std::sqrt(s) * x) * std::exp(-0.5 * s * x * x);
}

/// Integral of y^k e^{-y^2} over the real line.
inline double gaussian_moment(int k) {
  if (k % 2 == 1) return 0.0;
  return std::tgamma(0.5 * (k + 1));
}

/// Differential entropy of a Gaussian with variance var.
inline double gaussian_entropy(double var) { return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * var); }

/// Entropy of the first excited oscillator density (2/sqrt(pi)) y^2 e^{-y^2}:
/// h = 3/2 - ln(2/sqrt(pi)) - digamma(3/2), digamma(3/2) = 2 - gamma - 2 ln 2.
inline double first_excited_entropy() {
  const double digamma_three_halves = 2.0 - kEulerGamma - 2.0 * std::numbers::ln2;
  return 1.5 - std::log(2.0 / std::sqrt(std::numbers::pi)) - digamma_three_halves;
}

}  // namespace oracle
