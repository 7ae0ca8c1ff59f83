#pragma once

#include <functional>
#include <vector>

#include "fockconv/fock.hpp"
#include "fockconv/targets.hpp"

namespace fockconv {

/// One frequency component of the qubit drive, selective on photon number n.
struct ToneSpec {
  int n = 0;
  double beta = 0.0;  ///< pulse area, radians in [0, pi/2]
  double phi = 0.0;   ///< drive phase, radians in [-pi, pi)

  /// Detuning n * chi_qc in rad/s; derived, never stored.
  double detuning(double chi_qc) const { return n * chi_qc; }
};

struct ProtocolPlan {
  complex alpha;
  double chi_qc = 0.0;  ///< rad/s, sign as measured
  double tau = 0.0;     ///< s
  std::vector<ToneSpec> tones;  ///< n = 0..N without gaps
  TargetSpec target;
  double predicted_success = 0.0;
};

/// Matching rule: sin(beta_n) proportional to |d_n|/|c_n| with the largest
/// ratio at pi/2, phi_n = arg d_n - arg c_n - n chi tau.
/// Throws InfeasibleTargetError when some d_n != 0 has c_n = 0.
ProtocolPlan solve_drive_parameters(const TargetSpec& target, complex alpha, double chi_qc,
                                    double tau);

/// sum_n |c_n|^2 sin^2 beta_n.
double success_probability(const ProtocolPlan& plan);

struct AlphaSearch {
  double alpha_min = 0.05;
  double alpha_max = 4.0;
  double coarse_step = 0.01;
  double refine_tol = 1e-4;
};

struct AlphaOptimum {
  double alpha = 0.0;
  ProtocolPlan plan;
};

/// Coarse scan over real positive alpha, then golden-section refinement
/// around the best grid point.
AlphaOptimum optimize_alpha(const TargetSpec& target, double chi_qc, double tau,
                            const AlphaSearch& search = {});

/// Maximizer of `f` on [lo, hi] to within `tol`; assumes unimodality.
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

/// Wraps an angle into [-pi, pi).
double wrap_phase(double angle);

}  // namespace fockconv
