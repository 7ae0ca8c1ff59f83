#pragma once

#include "fockconv/fock.hpp"
#include "fockconv/planner.hpp"
#include "fockconv/pulse.hpp"

namespace fockconv {

/// Optional higher-order cavity terms, rad/s.
struct KerrParams {
  double self_kerr = 0.0;   ///< K in -K a^dag^2 a^2 / 2
  double chi_prime = 0.0;   ///< chi' in chi' a^dag^2 a^2 |e><e| / 2
};

inline constexpr double kDefaultDtMax = 1e-9;
inline constexpr double kNormDriftLimit = 1e-6;

/// Closed-form joint state after the selective rotations, starting from
/// |g> (x) |alpha> truncated to plan.target.dim levels.
JointState evolve_analytic(complex alpha, const ProtocolPlan& plan);

struct NumericEvolution {
  JointState state;
  double norm_drift = 0.0;  ///< | ||psi||^2 - 1 | before renormalization
  long steps = 0;
  double dt = 0.0;
};

/// Fixed-step RK4 integration of the interaction-picture Hamiltonian over
/// the waveform duration. The diagonal part (dispersive shift and Kerr terms)
/// is propagated exactly; RK4 handles only the drive coupling.
/// Throws StepTooLarge when the norm drift exceeds kNormDriftLimit.
NumericEvolution evolve_numeric(complex alpha, const Waveform& waveform, double chi_qc,
                                const KerrParams& kerr, int dim, double dt_max = kDefaultDtMax);

struct PostSelection {
  CavityState cavity;
  double probability = 0.0;
};

/// Projects onto qubit |e>. Throws ZeroProbability below 1e-15.
PostSelection postselect_excited(const JointState& state);

}  // namespace fockconv
