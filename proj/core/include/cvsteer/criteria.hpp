#pragma once

// Steering and Bell-nonlocality criteria evaluated on two-mode Fock states:
// Reid's inference-variance product, the conditional-entropy criterion and
// the maximal CHSH value under pseudo-Pauli observables.

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <string_view>

#include "cvsteer/fock.hpp"
#include "cvsteer/quadrature.hpp"

namespace cvsteer {

enum class Criterion { Reid, Entropic, Chsh };

std::string_view to_string(Criterion c);
Criterion criterion_from_string(std::string_view name);

/// Component keys.
inline constexpr std::string_view kVarMinX2 = "var_min_x2";
inline constexpr std::string_view kVarMinP2 = "var_min_p2";
inline constexpr std::string_view kHX2GivenX1 = "h_x2_given_x1";
inline constexpr std::string_view kHP2GivenP1 = "h_p2_given_p1";
inline constexpr std::string_view kSingularValue1 = "singular_value_1";
inline constexpr std::string_view kSingularValue2 = "singular_value_2";
inline constexpr std::string_view kSingularValue3 = "singular_value_3";

/// ln(pi e): the local-hidden-state bound of the entropic criterion.
inline const double kLnPiE = std::log(std::numbers::pi * std::numbers::e);

struct CriterionResult {
  Criterion criterion = Criterion::Reid;
  /// NaN when the evaluated state did not come from a parametrized family.
  double theta = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  std::map<std::string, double, std::less<>> components;
  bool violated = false;
  /// Set when an adaptive integral missed its tolerance.
  bool flagged = false;

  /// The value recomputed from the components.
  [[nodiscard]] double value_from_components() const;
};

/// Classical bound each criterion's value is compared against: 0 for the
/// steering criteria, 2 for CHSH.
double classical_bound(Criterion c);

/// violated <=> value strictly exceeds the classical bound.
bool is_violation(Criterion c, double value);

struct ConditionalVariance {
  double value = 0.0;
  bool tolerance_met = true;
};

/// Minimal inference variance of the second mode given the first, in the
/// given domain. Inner moments use Gauss-Hermite, the outer integral adaptive
/// panels. Single-product states are answered in closed form.
ConditionalVariance conditional_variance_min(const FockState& state, Domain dom, const QuadratureSpec& spec,
                                             const UnitSystem& units = {});

CriterionResult reid_value(const FockState& state, const QuadratureSpec& spec, const UnitSystem& units = {});

struct EntropyResult {
  double value = 0.0;
  bool tolerance_met = true;
};

/// Differential entropy of the single-mode Fock density |phi_n|^2.
EntropyResult fock_entropy(int n, Domain dom, const QuadratureSpec& spec, const UnitSystem& units = {});

/// Marginal entropy h(B1) of the first mode.
EntropyResult marginal_entropy(const FockState& state, Domain dom, const QuadratureSpec& spec,
                               const UnitSystem& units = {});

/// Marginal entropy h(B2) of the second mode.
EntropyResult second_mode_entropy(const FockState& state, Domain dom, const QuadratureSpec& spec,
                                  const UnitSystem& units = {});

/// h(B2|B1) = -integral P ln P + integral P(a) ln P(a) da.
EntropyResult conditional_entropy(const FockState& state, Domain dom, const QuadratureSpec& spec,
                                  const UnitSystem& units = {});

CriterionResult entropic_value(const FockState& state, const QuadratureSpec& spec, const UnitSystem& units = {});

/// t[i][j] = <sigma_i (x) sigma_j> for the pseudo-Pauli operators pairing
/// Fock levels (2n, 2n+1); index order x, y, z.
struct CorrelationMatrix {
  std::array<std::array<double, 3>, 3> t{};
};

CorrelationMatrix correlation_matrix(const FockState& state);

/// Singular values of T, descending.
std::array<double, 3> singular_values(const CorrelationMatrix& m);

/// 2 sqrt(u1 + u2) with u1 >= u2 the two largest eigenvalues of T^T T.
CriterionResult chsh_max(const FockState& state);

CriterionResult evaluate(Criterion c, const FockState& state, const QuadratureSpec& spec,
                         const UnitSystem& units = {});

/// Evaluates a criterion on a member of a named family and records theta.
CriterionResult evaluate(Criterion c, StateFamily family, double theta, const QuadratureSpec& spec,
                         const UnitSystem& units = {});

}  // namespace cvsteer
