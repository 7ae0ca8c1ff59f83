#pragma once

#include <variant>

#include "fockconv/fock.hpp"

namespace fockconv {

struct PhaseTarget {
  int n_max = 0;
  int k = 0;
};

struct SqueezedTarget {
  double r = 0.0;
  double theta = 0.0;
  int cutoff = 8;
};

struct CustomTarget {
  CVector amps;
};

struct TargetSpec {
  std::variant<PhaseTarget, SqueezedTarget, CustomTarget> kind;
  int dim = 0;

  /// Highest photon number the target may occupy (N).
  int n_max() const;
};

/// e^{i n theta}/sqrt(N+1) for n <= N, theta = 2 pi k/(N+1).
CavityState phase_state(int n_max, int k, int dim);

/// Even-photon expansion of the squeezed vacuum with xi = r e^{i theta},
/// truncated at `cutoff` and renormalized.
CavityState squeezed_state(double r, double theta, int cutoff, int dim);

/// Validates the spec and builds its state on `spec.dim` levels.
CavityState realize(const TargetSpec& spec);

}  // namespace fockconv
