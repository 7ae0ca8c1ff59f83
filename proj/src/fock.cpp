#include "fockconv/fock.hpp"

#include <cmath>
#include <string>

#include "fockconv/error.hpp"

namespace fockconv {

namespace {

void require_dim(int dim) {
  if (dim < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "dimension must be >= 1, got " + std::to_string(dim));
  }
}

}  // namespace

CavityState::CavityState(CVector amps) : amps_(std::move(amps)) {
  if (amps_.size() == 0) {
    throw Error(ErrorKind::InvalidArgument, "cavity state needs dim >= 1");
  }
  const double norm = amps_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::InvalidArgument,
                "cavity state amplitudes must be finite and not all zero");
  }
  amps_ /= norm;
}

CavityState CavityState::from_amplitudes(std::span<const complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return CavityState(std::move(v));
}

CavityState CavityState::fock(int n, int dim) {
  require_dim(dim);
  if (n < 0 || n >= dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "Fock index " + std::to_string(n) + " outside dim " + std::to_string(dim));
  }
  CVector v = CVector::Zero(dim);
  v(n) = 1.0;
  return CavityState(std::move(v));
}

int CavityState::support_max(double tol) const {
  for (int n = dim() - 1; n >= 0; --n) {
    if (std::abs(amps_(n)) > tol) return n;
  }
  return -1;
}

CavityState CavityState::resized(int dim) const {
  require_dim(dim);
  CVector v = CVector::Zero(dim);
  const int keep = std::min(dim, this->dim());
  v.head(keep) = amps_.head(keep);
  return CavityState(std::move(v));
}

JointState::JointState(CVector amps_g, CVector amps_e)
    : amps_g_(std::move(amps_g)), amps_e_(std::move(amps_e)) {
  if (amps_g_.size() != amps_e_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "qubit branches differ in dimension");
  }
  if (amps_g_.size() == 0) {
    throw Error(ErrorKind::InvalidArgument, "joint state needs dim >= 1");
  }
  const double norm = std::sqrt(amps_g_.squaredNorm() + amps_e_.squaredNorm());
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::InvalidArgument, "joint state must have nonzero finite norm");
  }
  amps_g_ /= norm;
  amps_e_ /= norm;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

complex coherent_coefficient(complex alpha, int n) {
  const double r = std::abs(alpha);
  if (r == 0.0) return n == 0 ? complex(1.0) : complex(0.0);
  const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * log_factorial(n);
  return std::polar(std::exp(log_mag), n * std::arg(alpha));
}

double coherent_tail(complex alpha, int dim) {
  const double x = std::norm(alpha);
  if (x == 0.0) return dim >= 1 ? 0.0 : 1.0;
  double tail = 0.0;
  const double log_x = std::log(x);
  for (int n = std::max(dim, 0);; ++n) {
    const double term = std::exp(-x + n * log_x - log_factorial(n));
    tail += term;
    if (n > x && term < 1e-30 * std::max(tail, 1e-300)) break;
    if (n > x && term == 0.0) break;
  }
  return tail;
}

CavityState coherent_amplitudes(complex alpha, int dim, double tail_tol) {
  require_dim(dim);
  const double tail = coherent_tail(alpha, dim);
  if (!(tail < tail_tol)) {
    throw Error(ErrorKind::Truncation,
                "coherent state |alpha|=" + std::to_string(std::abs(alpha)) +
                    " loses weight " + std::to_string(tail) + " above dim " +
                    std::to_string(dim) + "; raise the dimension");
  }
  CVector v(dim);
  for (int n = 0; n < dim; ++n) v(n) = coherent_coefficient(alpha, n);
  return CavityState(std::move(v));
}

Operator annihilation_operator(int dim) {
  require_dim(dim);
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {std::move(a), false};
}

Operator creation_operator(int dim) {
  Operator a = annihilation_operator(dim);
  return {a.entries.adjoint(), false};
}

Operator number_operator(int dim) {
  require_dim(dim);
  CMatrix n = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return {std::move(n), false};
}

Operator parity_operator(int dim) {
  require_dim(dim);
  CMatrix p = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return {std::move(p), true};
}

Operator identity_operator(int dim) {
  require_dim(dim);
  return {CMatrix::Identity(dim, dim), true};
}

CMatrix expm_hermitian(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  CVector phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phases(k) = std::polar(1.0, -lambda(k));
  const CMatrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Operator displacement_operator(complex alpha, int dim, int guard) {
  require_dim(dim);
  if (guard < 0) throw Error(ErrorKind::InvalidArgument, "guard band must be >= 0");
  const int work = dim + guard;
  const CMatrix a = annihilation_operator(work).entries;
  // exp(G) with G = alpha a^dag - alpha* a anti-Hermitian, so G = -i H for H = i G.
  const CMatrix generator = alpha * a.adjoint() - std::conj(alpha) * a;
  const CMatrix h = complex(0.0, 1.0) * generator;
  const CMatrix full = expm_hermitian(0.5 * (h + h.adjoint()));
  // The logical block of a truncated displacement is not exactly unitary.
  return {full.topLeftCorner(dim, dim), false};
}

double laguerre(int n, double a, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

complex displacement_element(complex alpha, int m, int n) {
  const double x = std::norm(alpha);
  if (x == 0.0) return m == n ? complex(1.0) : complex(0.0);
  const bool upper = m >= n;
  const int lo = upper ? n : m;
  const int hi = upper ? m : n;
  const int k = hi - lo;
  const double log_mag = 0.5 * (log_factorial(lo) - log_factorial(hi)) +
                         k * 0.5 * std::log(x) - 0.5 * x;
  const double lag = laguerre(lo, static_cast<double>(k), x);
  // m >= n: alpha^{m-n}; m < n: (-alpha*)^{n-m}.
  const double phase = upper ? k * std::arg(alpha) : k * std::arg(-std::conj(alpha));
  return std::polar(std::exp(log_mag) * lag, phase);
}

complex expectation_value(const Operator& op, const CavityState& state) {
  if (op.dim() != state.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator dim " + std::to_string(op.dim()) + " vs state dim " +
                    std::to_string(state.dim()));
  }
  const CVector& psi = state.amplitudes();
  return psi.dot(op.entries * psi);
}

double state_fidelity(const CavityState& a, const CavityState& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "fidelity between dims " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
  return std::min(1.0, std::norm(a.amplitudes().dot(b.amplitudes())));
}

}  // namespace fockconv
