#include "fockconv/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockconv/error.hpp"

namespace fockconv {

double wrap_phase(double angle) {
  double w = std::fmod(angle + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  w -= kPi;
  // fmod can land exactly on +pi after rounding.
  return w >= kPi ? -kPi : w;
}

ProtocolPlan solve_drive_parameters(const TargetSpec& target, complex alpha, double chi_qc,
                                    double tau) {
  if (!std::isfinite(chi_qc) || !std::isfinite(tau) || tau < 0.0 ||
      !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw Error(ErrorKind::InvalidArgument, "chi_qc, tau and alpha must be finite, tau >= 0");
  }
  const CavityState desired = realize(target);
  const int n_max = target.n_max();

  std::vector<double> ratio(n_max + 1, 0.0);
  std::vector<complex> c(n_max + 1);
  int best = -1;
  for (int n = 0; n <= n_max; ++n) {
    c[n] = coherent_coefficient(alpha, n);
    const double d_mag = std::abs(desired[n]);
    if (d_mag == 0.0) continue;
    if (std::abs(c[n]) == 0.0) {
      throw InfeasibleTargetError(
          n, "target needs photon number " + std::to_string(n) +
                 " but the coherent amplitude c_" + std::to_string(n) + " vanishes at |alpha|=" +
                 std::to_string(std::abs(alpha)));
    }
    ratio[n] = d_mag / std::abs(c[n]);
    if (best < 0 || ratio[n] > ratio[best]) best = n;
  }

  ProtocolPlan plan;
  plan.alpha = alpha;
  plan.chi_qc = chi_qc;
  plan.tau = tau;
  plan.target = target;
  plan.tones.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    ToneSpec tone{n, 0.0, 0.0};
    if (ratio[n] > 0.0) {
      tone.beta = n == best ? kPi / 2.0 : std::asin(std::min(1.0, ratio[n] / ratio[best]));
      tone.phi = wrap_phase(std::arg(desired[n]) - std::arg(c[n]) - n * chi_qc * tau);
    }
    plan.tones.push_back(tone);
  }
  plan.predicted_success = success_probability(plan);
  return plan;
}

double success_probability(const ProtocolPlan& plan) {
  double p = 0.0;
  for (const ToneSpec& tone : plan.tones) {
    const double s = std::sin(tone.beta);
    p += std::norm(coherent_coefficient(plan.alpha, tone.n)) * s * s;
  }
  return p;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

AlphaOptimum optimize_alpha(const TargetSpec& target, double chi_qc, double tau,
                            const AlphaSearch& search) {
  if (!(search.alpha_min >= 0.0) || !(search.alpha_max >= search.alpha_min) ||
      !(search.coarse_step > 0.0) || !(search.refine_tol > 0.0)) {
    throw Error(ErrorKind::EmptySearchRange,
                "alpha search needs 0 <= alpha_min <= alpha_max and positive step/tolerance");
  }
  auto probability = [&](double a) {
    return solve_drive_parameters(target, complex(a, 0.0), chi_qc, tau).predicted_success;
  };

  const auto steps =
      static_cast<long>(std::floor((search.alpha_max - search.alpha_min) / search.coarse_step + 1e-9));
  double best_alpha = search.alpha_min;
  double best_p = probability(best_alpha);
  for (long i = 1; i <= steps; ++i) {
    const double a = search.alpha_min + static_cast<double>(i) * search.coarse_step;
    const double p = probability(a);
    if (p > best_p) {
      best_p = p;
      best_alpha = a;
    }
  }

  const double lo = std::max(search.alpha_min, best_alpha - search.coarse_step);
  const double hi = std::min(search.alpha_max, best_alpha + search.coarse_step);
  double refined = best_alpha;
  if (hi > lo) {
    refined = golden_section_maximize(probability, lo, hi, search.refine_tol);
    if (probability(refined) < best_p) refined = best_alpha;
  }
  return {refined, solve_drive_parameters(target, complex(refined, 0.0), chi_qc, tau)};
}

}  // namespace fockconv
