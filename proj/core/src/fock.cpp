#include "cvsteer/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cvsteer/polynomial.hpp"
#include "cvsteer/quadrature.hpp"

namespace cvsteer {

std::string_view to_string(Domain dom) {
  return dom == Domain::Position ? "position" : "momentum";
}

double UnitSystem::length_scale(Domain dom) const { return 1.0 / std::sqrt(gaussian_scale(dom)); }

void validate(const UnitSystem& units) {
  if (!std::isfinite(units.m_omega) || units.m_omega <= 0.0) {
    throw std::invalid_argument("m_omega must be finite and positive");
  }
}

double hermite(int n, double y) {
  if (n < 0) throw std::invalid_argument("hermite: negative order");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * y * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

void hermite_functions(int n_max, double y, std::span<double> out) {
  if (n_max < 0 || out.size() < static_cast<std::size_t>(n_max) + 1) {
    throw std::invalid_argument("hermite_functions: output span too small");
  }
  static const double pi_quarter = std::pow(std::numbers::pi, -0.25);
  out[0] = pi_quarter * std::exp(-0.5 * y * y);
  if (n_max == 0) return;
  out[1] = std::sqrt(2.0) * y * out[0];
  for (int k = 1; k < n_max; ++k) {
    out[k + 1] = std::sqrt(2.0 / (k + 1)) * y * out[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
  }
}

namespace {

double scaled_hermite_function(int n, double v, double scale) {
  if (n < 0) throw std::invalid_argument("eigenfunction: negative order");
  std::vector<double> psi(static_cast<std::size_t>(n) + 1);
  hermite_functions(n, std::sqrt(scale) * v, psi);
  return std::pow(scale, 0.25) * psi[n];
}

}  // namespace

double eigenfunction_x(int n, double x, const UnitSystem& units) {
  return scaled_hermite_function(n, x, units.gaussian_scale(Domain::Position));
}

complex momentum_phase(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

complex eigenfunction_p(int n, double p, const UnitSystem& units) {
  return momentum_phase(n) * scaled_hermite_function(n, p, units.gaussian_scale(Domain::Momentum));
}

FockState::FockState(std::vector<FockTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("FockState: no terms");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.n1 < 0 || t.n2 < 0) throw std::invalid_argument("FockState: negative Fock index");
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[j].n1 == t.n1 && terms_[j].n2 == t.n2) {
        throw std::invalid_argument("FockState: duplicate term (" + std::to_string(t.n1) + ", " +
                                    std::to_string(t.n2) + ")");
      }
    }
    max_n_ = std::max({max_n_, t.n1, t.n2});
  }
  if (std::abs(norm_squared() - 1.0) > 1e-12) {
    throw std::invalid_argument("FockState: amplitudes not normalized");
  }
}

double FockState::norm_squared() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::norm(t.amp);
  return sum;
}

complex FockState::amplitude(int n1, int n2) const {
  for (const auto& t : terms_) {
    if (t.n1 == n1 && t.n2 == n2) return t.amp;
  }
  return {};
}

bool has_point_symmetry(const FockState& state) {
  const int parity = (state.terms().front().n1 + state.terms().front().n2) % 2;
  return std::all_of(state.terms().begin(), state.terms().end(),
                     [parity](const FockTerm& t) { return (t.n1 + t.n2) % 2 == parity; });
}

namespace {

FockState two_term_state(FockTerm first, FockTerm second) {
  std::vector<FockTerm> terms;
  if (std::abs(first.amp) >= kAmplitudeCutoff) terms.push_back(first);
  if (std::abs(second.amp) >= kAmplitudeCutoff) terms.push_back(second);
  return FockState(std::move(terms));
}

}  // namespace

FockState make_psi(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("make_psi: theta must be finite");
  return two_term_state({0, 0, std::cos(theta)}, {1, 1, std::sin(theta)});
}

FockState make_psi_prime(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("make_psi_prime: theta must be finite");
  return two_term_state({0, 1, std::cos(theta)}, {1, 0, std::sin(theta)});
}

std::string_view to_string(StateFamily family) {
  return family == StateFamily::Psi ? "psi" : "psi-prime";
}

StateFamily state_family_from_string(std::string_view name) {
  if (name == "psi") return StateFamily::Psi;
  if (name == "psi-prime" || name == "psi_prime") return StateFamily::PsiPrime;
  throw std::invalid_argument("unknown state '" + std::string(name) + "' (expected psi or psi-prime)");
}

FockState make_state(StateFamily family, double theta) {
  return family == StateFamily::Psi ? make_psi(theta) : make_psi_prime(theta);
}

std::vector<std::vector<complex>> first_mode_groups(const FockState& state, Domain dom) {
  const auto dim = static_cast<std::size_t>(state.max_n()) + 1;
  std::vector<std::vector<complex>> groups(dim, std::vector<complex>(dim));
  for (const auto& t : state.terms()) {
    complex amp = t.amp;
    if (dom == Domain::Momentum) amp *= momentum_phase(t.n1) * momentum_phase(t.n2);
    groups[t.n2][t.n1] += amp;
  }
  return groups;
}

ConditionalSlice::ConditionalSlice(const FockState& state, double a, Domain dom, const UnitSystem& units)
    : coeff_(static_cast<std::size_t>(state.max_n()) + 1),
      scale_(units.gaussian_scale(dom)),
      sqrt_scale_(std::sqrt(scale_)),
      quarter_scale_(std::pow(scale_, 0.25)) {
  std::vector<double> psi(coeff_.size());
  hermite_functions(state.max_n(), sqrt_scale_ * a, psi);
  for (const auto& t : state.terms()) {
    complex amp = t.amp;
    if (dom == Domain::Momentum) amp *= momentum_phase(t.n1) * momentum_phase(t.n2);
    coeff_[t.n2] += amp * quarter_scale_ * psi[t.n1];
  }
}

double ConditionalSlice::density(double b) const {
  const int n_max = static_cast<int>(coeff_.size()) - 1;
  // Small fixed buffer covers every realistic state without allocating.
  std::array<double, 32> stack{};
  std::vector<double> heap;
  std::span<double> psi;
  if (coeff_.size() <= stack.size()) {
    psi = std::span<double>(stack.data(), coeff_.size());
  } else {
    heap.resize(coeff_.size());
    psi = heap;
  }
  hermite_functions(n_max, sqrt_scale_ * b, psi);
  complex amp{};
  for (std::size_t n = 0; n < coeff_.size(); ++n) amp += coeff_[n] * psi[n];
  return std::norm(amp) * quarter_scale_ * quarter_scale_;
}

double ConditionalSlice::marginal() const {
  double sum = 0.0;
  for (const auto& c : coeff_) sum += std::norm(c);
  return sum;
}

std::vector<double> ConditionalSlice::zeros() const {
  auto real = strip_global_phase(coeff_);
  if (!real) return {};
  auto roots = real_roots(hermite_series_to_monomial(*real));
  for (auto& r : roots) r /= sqrt_scale_;
  return roots;
}

double joint_density(const FockState& state, double a, double b, Domain dom, const UnitSystem& units) {
  return ConditionalSlice(state, a, dom, units).density(b);
}

double marginal_density(const FockState& state, double a, Domain dom, const UnitSystem& units) {
  return ConditionalSlice(state, a, dom, units).marginal();
}

std::vector<double> marginal_zeros(const FockState& state, Domain dom, const UnitSystem& units) {
  const auto groups = first_mode_groups(state, dom);
  const double sqrt_scale = std::sqrt(units.gaussian_scale(dom));
  // The marginal vanishes only where every group polynomial vanishes; take
  // the roots of the first nonzero group and keep the common ones.
  for (const auto& group : groups) {
    const bool empty = std::all_of(group.begin(), group.end(), [](complex c) { return c == complex{}; });
    if (empty) continue;
    auto real = strip_global_phase(group);
    if (!real) return {};
    std::vector<double> common;
    for (double y : real_roots(hermite_series_to_monomial(*real))) {
      const double a = y / sqrt_scale;
      const double m = marginal_density(state, a, dom, units);
      const double peak = std::sqrt(units.gaussian_scale(dom));
      if (m <= 1e-24 * peak) common.push_back(a);
    }
    return common;
  }
  return {};
}

double conditional_mean(const FockState& state, double a, Domain dom, const UnitSystem& units,
                        const QuadratureSpec& spec) {
  const ConditionalSlice slice(state, a, dom, units);
  const auto rule = gauss_hermite_rule(spec.gh_order);
  const double m0 = integrate_moment_1d([&](double b) { return slice.density(b); }, rule, slice.gaussian_scale());
  if (m0 <= kDensityFloor) {
    throw DegenerateMarginal("conditional_mean: marginal vanishes at a = " + std::to_string(a));
  }
  const double m1 =
      integrate_moment_1d([&](double b) { return b * slice.density(b); }, rule, slice.gaussian_scale());
  return m1 / m0;
}

}  // namespace cvsteer
