#pragma once

// Truncated Fock-space algebra for a single bosonic mode coupled to a qubit.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fockconv {

using complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr int kDefaultGuard = 16;
inline constexpr double kDefaultTailTol = 1e-10;

/// Unit-norm amplitude vector over |0>..|D-1>.
class CavityState {
 public:
  /// Normalizes `amps`; throws InvalidArgument for an empty or all-zero vector.
  explicit CavityState(CVector amps);
  static CavityState from_amplitudes(std::span<const complex> amps);
  static CavityState fock(int n, int dim);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const noexcept { return amps_; }
  complex operator[](int n) const { return amps_(n); }

  /// Highest index carrying weight above `tol`, or -1 for none.
  int support_max(double tol = 1e-14) const;

  /// Same amplitudes embedded into (or truncated to) `dim`, renormalized.
  CavityState resized(int dim) const;

 private:
  CVector amps_;
};

/// Dense D x D operator on the truncated Fock space.
struct Operator {
  CMatrix entries;
  bool unitary = false;

  int dim() const noexcept { return static_cast<int>(entries.rows()); }
};

/// Qubit (x) cavity amplitudes, split into the |g> and |e> branches.
class JointState {
 public:
  /// Normalizes jointly; throws DimensionMismatch if the branches differ in size.
  JointState(CVector amps_g, CVector amps_e);

  int dim() const noexcept { return static_cast<int>(amps_g_.size()); }
  const CVector& ground() const noexcept { return amps_g_; }
  const CVector& excited() const noexcept { return amps_e_; }
  double excited_weight() const { return amps_e_.squaredNorm(); }

 private:
  CVector amps_g_;
  CVector amps_e_;
};

double log_factorial(int n);

/// e^{-|a|^2/2} a^n / sqrt(n!) without truncation, via logarithms.
complex coherent_coefficient(complex alpha, int n);

/// Coherent state on `dim` levels, renormalized after truncation.
/// Throws Truncation when the discarded Poisson tail reaches `tail_tol`.
CavityState coherent_amplitudes(complex alpha, int dim,
                                double tail_tol = kDefaultTailTol);

/// Poisson weight sum_{n >= dim} |c_n|^2 of the coherent state.
double coherent_tail(complex alpha, int dim);

Operator annihilation_operator(int dim);
Operator creation_operator(int dim);
Operator number_operator(int dim);
Operator parity_operator(int dim);
Operator identity_operator(int dim);

/// exp(alpha a^dag - alpha* a), built on dim + guard levels and read back on
/// the leading dim x dim block.
Operator displacement_operator(complex alpha, int dim, int guard = kDefaultGuard);

/// exp(-i H) for Hermitian H via eigendecomposition.
CMatrix expm_hermitian(const CMatrix& hermitian);

/// Exact <m|D(alpha)|n> of the untruncated displacement (Laguerre form).
complex displacement_element(complex alpha, int m, int n);

/// Generalized Laguerre polynomial L_n^{(a)}(x) by upward recurrence.
double laguerre(int n, double a, double x);

/// <psi|O|psi>; throws DimensionMismatch.
complex expectation_value(const Operator& op, const CavityState& state);

/// |<a|b>|^2, insensitive to global phase. Throws DimensionMismatch.
double state_fidelity(const CavityState& a, const CavityState& b);

}  // namespace fockconv
