#pragma once

#include <vector>

#include "fockconv/fock.hpp"
#include "fockconv/planner.hpp"

namespace fockconv {

inline constexpr double kDefaultSigma = 0.36e-6;               // s, so 4 sigma = 1.44 us
inline constexpr double kDefaultOmegaCap = 2.0 * kPi * 0.3e6;  // rad/s per tone
inline constexpr double kMinSamplesPerDetuning = 20.0;

/// Sampled complex baseband drive Omega(t) e^{i phi(t)} in rad/s.
/// Samples sit at t_k = k / sample_rate for k = 0..M, with duration = M / sample_rate.
struct Waveform {
  double sample_rate = 0.0;
  std::vector<complex> samples;
  double duration = 0.0;
  double sigma = 0.0;
  ProtocolPlan plan;

  /// Linear interpolation between samples; zero outside [0, duration].
  complex at(double t) const;
  double sample_interval() const { return 1.0 / sample_rate; }
};

/// Area of peak * exp(-(t - 2 sigma)^2 / (2 sigma^2)) over [0, 4 sigma].
double gaussian_pulse_area(double peak, double sigma);

/// Inverse of gaussian_pulse_area.
double gaussian_peak_for_area(double area, double sigma);

/// The sample grid holds a whole number of intervals spanning exactly 4 sigma, so
/// the stored sample_rate may exceed the requested one by less than one sample.
/// Throws NonpositiveSigma, SampleRateTooLow, AmplitudeCapExceeded, or
/// InvalidArgument when plan.tau disagrees with 4 sigma by more than a sample.
Waveform synthesize_waveform(const ProtocolPlan& plan, double sigma, double sample_rate,
                             double omega_cap = kDefaultOmegaCap);

/// Smallest rate satisfying the 20x margin over the highest tone detuning.
double minimum_sample_rate(int n_max, double chi_qc);

}  // namespace fockconv
