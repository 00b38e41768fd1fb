#pragma once

// Harmonic-oscillator eigenfunctions in position and momentum space, the
// two-mode Fock superposition model, and the densities derived from it.
//
// Units: hbar = 1 throughout. The product m*omega is kept as a single
// positive scale so that invariance under rescaling can be checked.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cvsteer {

using complex = std::complex<double>;

/// Absolute floor below which a density value is treated as zero.
inline constexpr double kDensityFloor = 1e-300;

/// Amplitudes whose magnitude falls below this are dropped by the state
/// constructors, so that cos(pi/2) and sin(pi) leave exact product states.
inline constexpr double kAmplitudeCutoff = 1e-15;

enum class Domain { Position, Momentum };

std::string_view to_string(Domain dom);

struct UnitSystem {
  static constexpr double hbar = 1.0;
  double m_omega = 1.0;

  /// Gaussian exponent scale s so that |phi_0|^2 is proportional to exp(-s v^2)
  /// in the given domain: m*omega for position, 1/(m*omega) for momentum.
  [[nodiscard]] double gaussian_scale(Domain dom) const {
    return dom == Domain::Position ? m_omega / hbar : hbar / m_omega;
  }
  /// Oscillator length in the given domain, 1/sqrt(gaussian_scale).
  [[nodiscard]] double length_scale(Domain dom) const;
};

/// Throws std::invalid_argument unless m_omega is finite and positive.
void validate(const UnitSystem& units);

class DegenerateMarginal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physicists' Hermite polynomial H_n(y) by the three-term recurrence.
double hermite(int n, double y);

/// Orthonormal Hermite functions psi_k(y) = (2^k k! sqrt(pi))^{-1/2} H_k(y) e^{-y^2/2}
/// for k = 0..n_max, written into out[0..n_max]. The Gaussian is carried
/// through the recurrence so large orders do not overflow.
void hermite_functions(int n_max, double y, std::span<double> out);

/// Position-space eigenfunction phi(n, x).
double eigenfunction_x(int n, double x, const UnitSystem& units = {});

/// Momentum-space eigenfunction, the transform of phi(n, .) with kernel
/// (2 pi)^{-1/2} e^{-i p x}. Equals (-i)^n times a real Hermite function.
complex eigenfunction_p(int n, double p, const UnitSystem& units = {});

/// (-i)^n
complex momentum_phase(int n);

struct FockTerm {
  int n1 = 0;
  int n2 = 0;
  complex amp;
};

/// Normalized finite superposition sum_k amp_k |n1_k> (x) |n2_k>.
class FockState {
 public:
  /// Throws std::invalid_argument on negative indices, duplicate (n1, n2)
  /// pairs, an empty term list, or a norm that differs from 1 by more than
  /// 1e-12.
  explicit FockState(std::vector<FockTerm> terms);

  [[nodiscard]] const std::vector<FockTerm>& terms() const { return terms_; }
  [[nodiscard]] int max_n() const { return max_n_; }
  [[nodiscard]] double norm_squared() const;

  /// True when the state is a single Fock product |n1>|n2>.
  [[nodiscard]] bool is_single_product() const { return terms_.size() == 1; }

  /// Amplitude of |n1, n2>, zero when absent.
  [[nodiscard]] complex amplitude(int n1, int n2) const;

 private:
  std::vector<FockTerm> terms_;
  int max_n_ = 0;
};

/// True when every term has the same parity of n1 + n2, so that
/// |Psi(-a, -b)| = |Psi(a, b)| in both domains and every first-mode integrand
/// built from the densities is even.
bool has_point_symmetry(const FockState& state);

/// cos(theta)|0,0> + sin(theta)|1,1>
FockState make_psi(double theta);

/// cos(theta)|0,1> + sin(theta)|1,0>
FockState make_psi_prime(double theta);

enum class StateFamily { Psi, PsiPrime };

std::string_view to_string(StateFamily family);
StateFamily state_family_from_string(std::string_view name);

FockState make_state(StateFamily family, double theta);

/// The wavefunction restricted to a fixed first-mode coordinate a:
/// Psi(a, b) = sum_n coeff[n] * psi_n(sqrt(s) * b) * s^{1/4}, where s is the
/// domain's Gaussian scale and psi_n the orthonormal Hermite functions.
class ConditionalSlice {
 public:
  ConditionalSlice(const FockState& state, double a, Domain dom, const UnitSystem& units);

  /// |Psi(a, b)|^2
  [[nodiscard]] double density(double b) const;

  /// Closed-form marginal P(a) = sum_n |coeff[n]|^2 by orthonormality in b.
  [[nodiscard]] double marginal() const;

  /// Real zeros in b of Psi(a, .), provided the slice is real up to a global
  /// phase. Sorted ascending. Empty when there are none or the slice is
  /// genuinely complex.
  [[nodiscard]] std::vector<double> zeros() const;

  [[nodiscard]] const std::vector<complex>& coefficients() const { return coeff_; }
  [[nodiscard]] double gaussian_scale() const { return scale_; }

 private:
  std::vector<complex> coeff_;
  double scale_ = 1.0;
  double sqrt_scale_ = 1.0;
  double quarter_scale_ = 1.0;
};

/// Single-mode amplitude coefficients of the first mode, grouped by the
/// second-mode index: out[n2][n1] = amp(n1, n2) times the domain phase.
std::vector<std::vector<complex>> first_mode_groups(const FockState& state, Domain dom);

double joint_density(const FockState& state, double a, double b, Domain dom,
                     const UnitSystem& units = {});

double marginal_density(const FockState& state, double a, Domain dom,
                        const UnitSystem& units = {});

/// Real points a where the first-mode marginal vanishes, sorted ascending.
std::vector<double> marginal_zeros(const FockState& state, Domain dom,
                                   const UnitSystem& units = {});

struct QuadratureSpec;

/// E[b | a]: the estimator minimising the conditional variance. Throws
/// DegenerateMarginal when the marginal at a is at or below kDensityFloor.
double conditional_mean(const FockState& state, double a, Domain dom, const UnitSystem& units,
                        const QuadratureSpec& spec);

}  // namespace cvsteer
