#include "fockconv/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockconv/error.hpp"

namespace fockconv {

namespace {

// sqrt(2 pi) * erf(sqrt 2): area of the unit-peak, unit-sigma envelope on [0, 4 sigma].
double unit_area() { return std::sqrt(2.0 * kPi) * std::erf(std::sqrt(2.0)); }

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::NonpositiveSigma, "pulse sigma must be positive and finite");
  }
}

}  // namespace

complex Waveform::at(double t) const {
  const double slack = 1e-9 / sample_rate;
  if (samples.empty() || t < -slack || t > duration + slack) return 0.0;
  const double pos = std::clamp(t, 0.0, duration) * sample_rate;
  auto k = static_cast<std::size_t>(std::floor(pos));
  if (k + 1 >= samples.size()) return samples.back();
  const double frac = pos - static_cast<double>(k);
  return samples[k] + frac * (samples[k + 1] - samples[k]);
}

double gaussian_pulse_area(double peak, double sigma) {
  require_sigma(sigma);
  return peak * sigma * unit_area();
}

double gaussian_peak_for_area(double area, double sigma) {
  require_sigma(sigma);
  return area / (sigma * unit_area());
}

double minimum_sample_rate(int n_max, double chi_qc) {
  return kMinSamplesPerDetuning * n_max * std::abs(chi_qc) / (2.0 * kPi);
}

Waveform synthesize_waveform(const ProtocolPlan& plan, double sigma, double sample_rate,
                             double omega_cap) {
  require_sigma(sigma);
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw Error(ErrorKind::SampleRateTooLow, "sample rate must be positive");
  }
  const int n_max = plan.tones.empty() ? 0 : plan.tones.back().n;
  const double needed = minimum_sample_rate(n_max, plan.chi_qc);
  if (sample_rate < needed) {
    throw Error(ErrorKind::SampleRateTooLow,
                "sample rate " + std::to_string(sample_rate) + " Hz below required " +
                    std::to_string(needed) + " Hz for N=" + std::to_string(n_max));
  }
  const double length = 4.0 * sigma;
  if (std::abs(plan.tau - length) > 1.0 / sample_rate) {
    throw Error(ErrorKind::InvalidArgument,
                "plan tau " + std::to_string(plan.tau) + " s does not match pulse length 4 sigma = " +
                    std::to_string(length) + " s");
  }

  std::vector<double> peak(plan.tones.size());
  for (std::size_t i = 0; i < plan.tones.size(); ++i) {
    peak[i] = gaussian_peak_for_area(plan.tones[i].beta, sigma);
    if (peak[i] > omega_cap * (1.0 + 1e-12)) {
      throw Error(ErrorKind::AmplitudeCapExceeded,
                  "tone n=" + std::to_string(plan.tones[i].n) + " needs peak " +
                      std::to_string(peak[i]) + " rad/s above cap " + std::to_string(omega_cap));
    }
  }

  // Whole number of intervals spanning exactly 4 sigma, at no less than the requested rate.
  const auto intervals =
      static_cast<std::size_t>(std::max(1.0, std::ceil(length * sample_rate * (1.0 - 1e-12))));
  Waveform wf;
  wf.sample_rate = static_cast<double>(intervals) / length;
  wf.sigma = sigma;
  wf.duration = length;
  wf.plan = plan;
  wf.samples.assign(intervals + 1, complex(0.0));
  const double center = 2.0 * sigma;
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double t = length * static_cast<double>(k) / static_cast<double>(intervals);
    const double envelope = std::exp(-(t - center) * (t - center) / (2.0 * sigma * sigma));
    complex s = 0.0;
    for (std::size_t i = 0; i < plan.tones.size(); ++i) {
      if (peak[i] == 0.0) continue;
      const ToneSpec& tone = plan.tones[i];
      s += std::polar(peak[i] * envelope, tone.detuning(plan.chi_qc) * t + tone.phi);
    }
    wf.samples[k] = s;
  }
  return wf;
}

}  // namespace fockconv
