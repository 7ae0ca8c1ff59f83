#include "fockconv/dynamics.hpp"

#include <cmath>
#include <string>

#include "fockconv/error.hpp"

namespace fockconv {

namespace {

void require_consistent_tones(const ProtocolPlan& plan, int dim) {
  for (std::size_t i = 0; i < plan.tones.size(); ++i) {
    if (plan.tones[i].n != static_cast<int>(i)) {
      throw Error(ErrorKind::InvalidArgument, "plan tones must be indexed 0..N without gaps");
    }
  }
  if (static_cast<int>(plan.tones.size()) > dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "plan addresses N=" + std::to_string(plan.tones.size() - 1) +
                    " but dim is " + std::to_string(dim));
  }
}

}  // namespace

JointState evolve_analytic(complex alpha, const ProtocolPlan& plan) {
  const int dim = plan.target.dim;
  require_consistent_tones(plan, dim);
  const CavityState initial = coherent_amplitudes(alpha, dim);
  CVector g = initial.amplitudes();
  CVector e = CVector::Zero(dim);
  for (const ToneSpec& tone : plan.tones) {
    const complex c = initial[tone.n];
    g(tone.n) = c * std::cos(tone.beta);
    e(tone.n) = complex(0.0, -1.0) * c *
                std::polar(std::sin(tone.beta), tone.phi + tone.n * plan.chi_qc * plan.tau);
  }
  return JointState(std::move(g), std::move(e));
}

NumericEvolution evolve_numeric(complex alpha, const Waveform& waveform, double chi_qc,
                                const KerrParams& kerr, int dim, double dt_max) {
  require_consistent_tones(waveform.plan, dim);
  if (!(dt_max > 0.0) || !(waveform.sample_rate > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "dt_max and sample rate must be positive");
  }
  if (!std::isfinite(kerr.self_kerr) || !std::isfinite(kerr.chi_prime) || !std::isfinite(chi_qc)) {
    throw Error(ErrorKind::InvalidArgument, "Hamiltonian parameters must be finite");
  }
  const CavityState initial = coherent_amplitudes(alpha, dim);

  // Steps land on sample points so the interpolated drive is smooth within a step.
  const double interval = waveform.sample_interval();
  const auto substeps = static_cast<long>(std::ceil(interval / dt_max - 1e-9));
  const double h = interval / static_cast<double>(substeps);
  const auto intervals = static_cast<long>(waveform.samples.empty() ? 0 : waveform.samples.size() - 1);
  const long steps = intervals * substeps;
  const double duration = static_cast<double>(intervals) * interval;

  Eigen::ArrayXd energy_g(dim);
  Eigen::ArrayXd energy_e(dim);
  for (int n = 0; n < dim; ++n) {
    const double pairs = 0.5 * n * (n - 1.0);
    energy_g(n) = -kerr.self_kerr * pairs;
    energy_e(n) = -chi_qc * n - kerr.self_kerr * pairs + kerr.chi_prime * pairs;
  }
  const Eigen::ArrayXd gap = energy_e - energy_g;

  using State = Eigen::ArrayXcd;
  // Drive at fractional position `frac` inside sample interval `k`; indexing
  // keeps the step boundaries exactly on the samples.
  auto drive = [&](long k, double frac) {
    const complex a = waveform.samples[static_cast<std::size_t>(k)];
    const complex b = waveform.samples[static_cast<std::size_t>(k + 1)];
    return a + frac * (b - a);
  };

  // i d/dt (g, e) = (s* e^{-i gap t} e, s e^{i gap t} g) in the frame of the diagonal part.
  auto rhs = [&](double t, complex s, const State& g, const State& e, State& dg, State& de) {
    const State rot = (complex(0.0, 1.0) * (gap * t).cast<complex>()).exp();
    de = complex(0.0, -1.0) * s * rot * g;
    dg = complex(0.0, -1.0) * std::conj(s) * rot.conjugate() * e;
  };

  State g = initial.amplitudes().array();
  State e = State::Zero(dim);
  State k1g(dim), k1e(dim), k2g(dim), k2e(dim), k3g(dim), k3e(dim), k4g(dim), k4e(dim);
  const double sub = static_cast<double>(substeps);
  for (long step = 0; step < steps; ++step) {
    const long k = step / substeps;
    const double j = static_cast<double>(step % substeps);
    const double t = static_cast<double>(step) * h;
    const complex s0 = drive(k, j / sub);
    const complex s_mid = drive(k, (j + 0.5) / sub);
    const complex s1 = drive(k, (j + 1.0) / sub);
    rhs(t, s0, g, e, k1g, k1e);
    rhs(t + 0.5 * h, s_mid, g + 0.5 * h * k1g, e + 0.5 * h * k1e, k2g, k2e);
    rhs(t + 0.5 * h, s_mid, g + 0.5 * h * k2g, e + 0.5 * h * k2e, k3g, k3e);
    rhs(t + h, s1, g + h * k3g, e + h * k3e, k4g, k4e);
    g += (h / 6.0) * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    e += (h / 6.0) * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
  }

  const double drift = std::abs(g.abs2().sum() + e.abs2().sum() - 1.0);
  if (!(drift <= kNormDriftLimit)) {
    throw Error(ErrorKind::StepTooLarge,
                "RK4 norm drift " + std::to_string(drift) + " exceeds limit; reduce dt_max");
  }
  const State back_g = (complex(0.0, -1.0) * (energy_g * duration).cast<complex>()).exp();
  const State back_e = (complex(0.0, -1.0) * (energy_e * duration).cast<complex>()).exp();
  CVector out_g = (back_g * g).matrix();
  CVector out_e = (back_e * e).matrix();
  return {JointState(std::move(out_g), std::move(out_e)), drift, steps, h};
}

PostSelection postselect_excited(const JointState& state) {
  const double prob = state.excited_weight();
  if (!(prob >= 1e-15)) {
    throw Error(ErrorKind::ZeroProbability,
                "excited-state branch has probability " + std::to_string(prob));
  }
  return {CavityState(state.excited() / std::sqrt(prob)), prob};
}

}  // namespace fockconv
