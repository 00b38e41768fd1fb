#include "cvsteer/criteria.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvsteer/polynomial.hpp"

namespace cvsteer {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Reid: return "reid";
    case Criterion::Entropic: return "entropic";
    case Criterion::Chsh: return "chsh";
  }
  return "unknown";
}

Criterion criterion_from_string(std::string_view name) {
  if (name == "reid") return Criterion::Reid;
  if (name == "entropic" || name == "ent") return Criterion::Entropic;
  if (name == "chsh") return Criterion::Chsh;
  throw std::invalid_argument("unknown criterion '" + std::string(name) + "' (expected reid, entropic or chsh)");
}

double classical_bound(Criterion c) { return c == Criterion::Chsh ? 2.0 : 0.0; }

bool is_violation(Criterion c, double value) { return value > classical_bound(c); }

double CriterionResult::value_from_components() const {
  switch (criterion) {
    case Criterion::Reid:
      return 0.25 - components.at(std::string(kVarMinX2)) * components.at(std::string(kVarMinP2));
    case Criterion::Entropic:
      return kLnPiE - components.at(std::string(kHX2GivenX1)) - components.at(std::string(kHP2GivenP1));
    case Criterion::Chsh: {
      const double s1 = components.at(std::string(kSingularValue1));
      const double s2 = components.at(std::string(kSingularValue2));
      return 2.0 * std::sqrt(s1 * s1 + s2 * s2);
    }
  }
  return value;
}

namespace {

QuadratureSpec scaled_window(QuadratureSpec spec, Domain dom, const UnitSystem& units) {
  spec.half_width *= units.length_scale(dom);
  return spec;
}

FockState swap_modes(const FockState& state) {
  std::vector<FockTerm> swapped;
  swapped.reserve(state.terms().size());
  for (const auto& t : state.terms()) swapped.push_back({t.n2, t.n1, t.amp});
  return FockState(std::move(swapped));
}

OuterSymmetry symmetry_of(const FockState& state) {
  return has_point_symmetry(state) ? OuterSymmetry::Even : OuterSymmetry::None;
}

}  // namespace

ConditionalVariance conditional_variance_min(const FockState& state, Domain dom, const QuadratureSpec& spec,
                                             const UnitSystem& units) {
  validate(spec);
  validate(units);
  const double scale = units.gaussian_scale(dom);
  if (state.is_single_product()) {
    // Conditioning on an uncorrelated mode leaves the Fock variance (n + 1/2)/s.
    return {(state.terms().front().n2 + 0.5) / scale, true};
  }

  const auto& rule = cached_gauss_hermite_rule(spec.gh_order);
  const double inv_sqrt = 1.0 / std::sqrt(scale);
  auto residual_variance = [&](double a) {
    const ConditionalSlice slice(state, a, dom, units);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
      const double b = rule.nodes[i] * inv_sqrt;
      const double wd = rule.scaled_weights[i] * slice.density(b);
      m0 += wd;
      m1 += wd * b;
      m2 += wd * b * b;
    }
    m0 *= inv_sqrt;
    m1 *= inv_sqrt;
    m2 *= inv_sqrt;
    if (m0 <= kDensityFloor) return 0.0;
    return m2 - m1 * m1 / m0;
  };

  const auto window = scaled_window(spec, dom, units);
  const auto breaks = marginal_zeros(state, dom, units);
  if (has_point_symmetry(state)) {
    const auto r = integrate_adaptive(residual_variance, 0.0, window.half_width, 0.5 * spec.panel_tol,
                                      spec.max_depth, breaks);
    return {2.0 * r.value, r.tolerance_met};
  }
  const auto r = integrate_adaptive(residual_variance, -window.half_width, window.half_width, spec.panel_tol,
                                    spec.max_depth, breaks);
  return {r.value, r.tolerance_met};
}

CriterionResult reid_value(const FockState& state, const QuadratureSpec& spec, const UnitSystem& units) {
  const auto vx = conditional_variance_min(state, Domain::Position, spec, units);
  const auto vp = conditional_variance_min(state, Domain::Momentum, spec, units);
  CriterionResult out;
  out.criterion = Criterion::Reid;
  out.components.emplace(kVarMinX2, vx.value);
  out.components.emplace(kVarMinP2, vp.value);
  out.value = 0.25 - vx.value * vp.value;
  out.violated = is_violation(Criterion::Reid, out.value);
  out.flagged = !(vx.tolerance_met && vp.tolerance_met);
  return out;
}

EntropyResult fock_entropy(int n, Domain dom, const QuadratureSpec& spec, const UnitSystem& units) {
  validate(spec);
  validate(units);
  if (n < 0) throw std::invalid_argument("fock_entropy: negative Fock index");
  const double scale = units.gaussian_scale(dom);
  if (n == 0) {
    // Gaussian with variance 1/(2s).
    return {0.5 * std::log(std::numbers::pi * std::numbers::e / scale), true};
  }
  std::vector<double> unit(static_cast<std::size_t>(n) + 1, 0.0);
  unit[n] = 1.0;
  auto breaks = real_roots(hermite_series_to_monomial(unit));
  const double sqrt_scale = std::sqrt(scale);
  for (auto& b : breaks) b /= sqrt_scale;
  std::vector<double> psi(static_cast<std::size_t>(n) + 1);
  auto density = [&](double v) {
    hermite_functions(n, sqrt_scale * v, psi);
    return sqrt_scale * psi[n] * psi[n];
  };
  const auto r = integrate_entropy_1d(density, scaled_window(spec, dom, units), breaks, OuterSymmetry::Even);
  return {r.value, r.tolerance_met};
}

EntropyResult marginal_entropy(const FockState& state, Domain dom, const QuadratureSpec& spec,
                               const UnitSystem& units) {
  validate(spec);
  validate(units);
  if (state.is_single_product()) return fock_entropy(state.terms().front().n1, dom, spec, units);
  const auto breaks = marginal_zeros(state, dom, units);
  const auto r = integrate_entropy_1d([&](double a) { return marginal_density(state, a, dom, units); },
                                      scaled_window(spec, dom, units), breaks, symmetry_of(state));
  return {r.value, r.tolerance_met};
}

EntropyResult second_mode_entropy(const FockState& state, Domain dom, const QuadratureSpec& spec,
                                  const UnitSystem& units) {
  return marginal_entropy(swap_modes(state), dom, spec, units);
}

EntropyResult conditional_entropy(const FockState& state, Domain dom, const QuadratureSpec& spec,
                                  const UnitSystem& units) {
  validate(spec);
  validate(units);
  if (state.is_single_product()) return fock_entropy(state.terms().front().n2, dom, spec, units);

  const auto window = scaled_window(spec, dom, units);
  const auto outer_breaks = marginal_zeros(state, dom, units);
  const auto joint = integrate_entropy_2d_sliced(
      [&](double a) {
        ConditionalSlice slice(state, a, dom, units);
        auto zeros = slice.zeros();
        return SliceIntegrand{[slice = std::move(slice)](double b) { return slice.density(b); },
                              std::move(zeros)};
      },
      window, outer_breaks, symmetry_of(state));
  const auto marginal = marginal_entropy(state, dom, spec, units);
  return {joint.value - marginal.value, joint.tolerance_met && marginal.tolerance_met};
}

CriterionResult entropic_value(const FockState& state, const QuadratureSpec& spec, const UnitSystem& units) {
  const auto hx = conditional_entropy(state, Domain::Position, spec, units);
  const auto hp = conditional_entropy(state, Domain::Momentum, spec, units);
  CriterionResult out;
  out.criterion = Criterion::Entropic;
  out.components.emplace(kHX2GivenX1, hx.value);
  out.components.emplace(kHP2GivenP1, hp.value);
  out.value = kLnPiE - hx.value - hp.value;
  out.violated = is_violation(Criterion::Entropic, out.value);
  out.flagged = !(hx.tolerance_met && hp.tolerance_met);
  return out;
}

namespace {

using Matrix = std::vector<std::vector<complex>>;

// Pseudo-Pauli matrix on a truncated single-mode space of even dimension.
Matrix pseudo_pauli(int axis, std::size_t dim) {
  Matrix s(dim, std::vector<complex>(dim));
  for (std::size_t n = 0; n + 1 < dim; n += 2) {
    switch (axis) {
      case 0:
        s[n + 1][n] = 1.0;
        s[n][n + 1] = 1.0;
        break;
      case 1:
        s[n + 1][n] = complex(0.0, 1.0);
        s[n][n + 1] = complex(0.0, -1.0);
        break;
      default:
        s[n][n] = 1.0;
        s[n + 1][n + 1] = -1.0;
        break;
    }
  }
  return s;
}

}  // namespace

CorrelationMatrix correlation_matrix(const FockState& state) {
  // Round the top level up to an odd index so every (2n, 2n+1) pair is whole.
  const int top = state.max_n() % 2 == 0 ? state.max_n() + 1 : state.max_n();
  const auto dim = static_cast<std::size_t>(top) + 1;
  Matrix coeff(dim, std::vector<complex>(dim));
  for (const auto& t : state.terms()) coeff[t.n1][t.n2] = t.amp;

  std::array<Matrix, 3> paulis{pseudo_pauli(0, dim), pseudo_pauli(1, dim), pseudo_pauli(2, dim)};
  CorrelationMatrix out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto& si = paulis[i];
      const auto& sj = paulis[j];
      // <psi| (si (x) sj) |psi> = sum conj(C[m1][m2]) si[m1][n1] sj[m2][n2] C[n1][n2]
      complex acc{};
      for (std::size_t m1 = 0; m1 < dim; ++m1) {
        for (std::size_t m2 = 0; m2 < dim; ++m2) {
          if (coeff[m1][m2] == complex{}) continue;
          complex applied{};
          for (std::size_t n1 = 0; n1 < dim; ++n1) {
            if (si[m1][n1] == complex{}) continue;
            for (std::size_t n2 = 0; n2 < dim; ++n2) {
              applied += si[m1][n1] * sj[m2][n2] * coeff[n1][n2];
            }
          }
          acc += std::conj(coeff[m1][m2]) * applied;
        }
      }
      out.t[i][j] = acc.real();
    }
  }
  return out;
}

std::array<double, 3> singular_values(const CorrelationMatrix& m) {
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = m.t[i][j];
  }
  // Eigenvalues of T^T T come back ascending.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.transpose() * t, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  auto root = [](double u) { return std::sqrt(std::max(u, 0.0)); };
  return {root(ev[2]), root(ev[1]), root(ev[0])};
}

CriterionResult chsh_max(const FockState& state) {
  const auto sv = singular_values(correlation_matrix(state));
  CriterionResult out;
  out.criterion = Criterion::Chsh;
  out.components.emplace(kSingularValue1, sv[0]);
  out.components.emplace(kSingularValue2, sv[1]);
  out.components.emplace(kSingularValue3, sv[2]);
  out.value = 2.0 * std::sqrt(sv[0] * sv[0] + sv[1] * sv[1]);
  out.violated = is_violation(Criterion::Chsh, out.value);
  return out;
}

CriterionResult evaluate(Criterion c, const FockState& state, const QuadratureSpec& spec,
                         const UnitSystem& units) {
  switch (c) {
    case Criterion::Reid: return reid_value(state, spec, units);
    case Criterion::Entropic: return entropic_value(state, spec, units);
    case Criterion::Chsh: return chsh_max(state);
  }
  throw std::invalid_argument("evaluate: unknown criterion");
}

CriterionResult evaluate(Criterion c, StateFamily family, double theta, const QuadratureSpec& spec,
                         const UnitSystem& units) {
  auto result = evaluate(c, make_state(family, theta), spec, units);
  result.theta = theta;
  return result;
}

}  // namespace cvsteer
