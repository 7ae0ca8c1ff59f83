#include "fockconv/targets.hpp"

#include <cmath>
#include <string>

#include "fockconv/error.hpp"

namespace fockconv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_room(int n_max, int dim) {
  if (dim <= n_max) {
    throw Error(ErrorKind::DimensionMismatch,
                "dim " + std::to_string(dim) + " must exceed target N=" + std::to_string(n_max));
  }
}

}  // namespace

int TargetSpec::n_max() const {
  return std::visit(overloaded{
                        [](const PhaseTarget& p) { return p.n_max; },
                        [](const SqueezedTarget& s) { return s.cutoff; },
                        [](const CustomTarget& c) {
                          for (Eigen::Index n = c.amps.size() - 1; n >= 0; --n) {
                            if (c.amps(n) != complex(0.0)) return static_cast<int>(n);
                          }
                          return -1;
                        },
                    },
                    kind);
}

CavityState phase_state(int n_max, int k, int dim) {
  if (n_max < 0 || k < 0 || k > n_max) {
    throw Error(ErrorKind::InvalidArgument, "phase state requires 0 <= k <= N");
  }
  require_room(n_max, dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_max + 1));
  CVector v = CVector::Zero(dim);
  for (int n = 0; n <= n_max; ++n) {
    // n*theta with theta = 2 pi k/(N+1), reduced mod 2 pi before scaling.
    const double angle = 2.0 * kPi * static_cast<double>((static_cast<long>(n) * k) % (n_max + 1)) /
                         (n_max + 1);
    v(n) = std::polar(amp, angle);
  }
  return CavityState(std::move(v));
}

CavityState squeezed_state(double r, double theta, int cutoff, int dim) {
  if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(theta)) {
    throw Error(ErrorKind::InvalidArgument, "squeezing requires finite r >= 0");
  }
  if (cutoff < 0 || cutoff % 2 != 0) {
    throw Error(ErrorKind::OddCutoff,
                "squeezed cutoff must be even and >= 0, got " + std::to_string(cutoff));
  }
  require_room(cutoff, dim);
  const complex ratio = -std::polar(std::tanh(r), theta);
  CVector v = CVector::Zero(dim);
  for (int n = 0; 2 * n <= cutoff; ++n) {
    // sqrt((2n)!)/(n! 2^n)
    const double weight = std::exp(0.5 * log_factorial(2 * n) - log_factorial(n) - n * std::log(2.0));
    v(2 * n) = std::pow(ratio, n) * weight;
  }
  return CavityState(std::move(v));
}

CavityState realize(const TargetSpec& spec) {
  return std::visit(
      overloaded{
          [&](const PhaseTarget& p) { return phase_state(p.n_max, p.k, spec.dim); },
          [&](const SqueezedTarget& s) {
            return squeezed_state(s.r, s.theta, s.cutoff, spec.dim);
          },
          [&](const CustomTarget& c) {
            if (c.amps.size() == 0 || c.amps.norm() == 0.0) {
              throw Error(ErrorKind::InvalidArgument, "custom target must be a nonzero vector");
            }
            const int n = spec.n_max();
            require_room(n, spec.dim);
            CVector v = CVector::Zero(spec.dim);
            v.head(n + 1) = c.amps.head(n + 1);
            return CavityState(std::move(v));
          },
      },
      spec.kind);
}

}  // namespace fockconv
