#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace cvsteer {

/// Monomial coefficients (ascending powers of y) of the polynomial part of
/// sum_n weights[n] * psi_n(y), where psi_n are the orthonormal Hermite
/// functions. The common factor e^{-y^2/2} is dropped.
std::vector<double> hermite_series_to_monomial(std::span<const double> weights);

/// Rotates a complex coefficient vector by the conjugate phase of its largest
/// entry. Returns the real parts when every imaginary part is negligible,
/// otherwise nullopt.
std::optional<std::vector<double>> strip_global_phase(std::span<const std::complex<double>> coeffs);

/// Real roots of sum_k coeffs[k] y^k, ascending, duplicates within 1e-12
/// merged. Leading coefficients that are negligible relative to the largest
/// are trimmed first.
std::vector<double> real_roots(std::span<const double> coeffs);

/// Horner evaluation of sum_k coeffs[k] y^k.
double evaluate_polynomial(std::span<const double> coeffs, double y);

}  // namespace cvsteer
