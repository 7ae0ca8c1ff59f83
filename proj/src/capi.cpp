#include "fockconv/fockconv.h"

#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "fockconv/dynamics.hpp"
#include "fockconv/error.hpp"
#include "fockconv/fock.hpp"
#include "fockconv/io.hpp"
#include "fockconv/planner.hpp"
#include "fockconv/pulse.hpp"
#include "fockconv/targets.hpp"
#include "fockconv/tomography.hpp"

using namespace fockconv;

struct fc_state {
  CavityState value;
};
struct fc_target {
  TargetSpec value;
};
struct fc_plan {
  ProtocolPlan value;
};
struct fc_waveform {
  Waveform value;
};
struct fc_joint {
  JointState value;
};
struct fc_wigner {
  WignerGrid value;
};
struct fc_density {
  DensityMatrix value;
};

namespace {

thread_local std::string last_error;
thread_local int last_infeasible = -1;

fc_status to_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return FC_ERR_INVALID_ARGUMENT;
    case ErrorKind::Truncation: return FC_ERR_TRUNCATION;
    case ErrorKind::DimensionMismatch: return FC_ERR_DIMENSION_MISMATCH;
    case ErrorKind::InfeasibleTarget: return FC_ERR_INFEASIBLE_TARGET;
    case ErrorKind::EmptySearchRange: return FC_ERR_EMPTY_SEARCH_RANGE;
    case ErrorKind::NonpositiveSigma: return FC_ERR_NONPOSITIVE_SIGMA;
    case ErrorKind::SampleRateTooLow: return FC_ERR_SAMPLE_RATE_TOO_LOW;
    case ErrorKind::AmplitudeCapExceeded: return FC_ERR_AMPLITUDE_CAP_EXCEEDED;
    case ErrorKind::StepTooLarge: return FC_ERR_STEP_TOO_LARGE;
    case ErrorKind::ZeroProbability: return FC_ERR_ZERO_PROBABILITY;
    case ErrorKind::InvalidR: return FC_ERR_INVALID_R;
    case ErrorKind::UnderdeterminedGrid: return FC_ERR_UNDERDETERMINED_GRID;
    case ErrorKind::SingularDesign: return FC_ERR_SINGULAR_DESIGN;
    case ErrorKind::FitDiverged: return FC_ERR_FIT_DIVERGED;
    case ErrorKind::TooFewResamples: return FC_ERR_TOO_FEW_RESAMPLES;
    case ErrorKind::OddCutoff: return FC_ERR_ODD_CUTOFF;
    case ErrorKind::Io: return FC_ERR_IO;
  }
  return FC_ERR_INTERNAL;
}

fc_status fail(fc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
fc_status guarded(F&& body) {
  last_error.clear();
  last_infeasible = -1;
  try {
    body();
    return FC_OK;
  } catch (const InfeasibleTargetError& e) {
    last_infeasible = e.photon_number();
    return fail(FC_ERR_INFEASIBLE_TARGET, e.what());
  } catch (const Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FC_ERR_INTERNAL, "unknown failure");
  }
}

#define FC_REQUIRE(ptr)                                                  \
  do {                                                                   \
    if ((ptr) == nullptr) return fail(FC_ERR_NULL_POINTER, #ptr " is null"); \
  } while (0)

CVector gather(const double* re, const double* im, size_t len) {
  CVector v(static_cast<Eigen::Index>(len));
  for (size_t i = 0; i < len; ++i) {
    v(static_cast<Eigen::Index>(i)) = complex(re[i], im != nullptr ? im[i] : 0.0);
  }
  return v;
}

GridGeometry to_geometry(const fc_grid_geometry& g) {
  return {g.x_min, g.x_max, g.dx, g.p_min, g.p_max, g.dp};
}

fc_grid_geometry from_geometry(const GridGeometry& g) {
  return {g.x_min, g.x_max, g.dx, g.p_min, g.p_max, g.dp};
}

template <class Writer>
void write_atomically(const char* path, Writer&& write) {
  std::ostringstream out;
  write(out);
  io::write_file_atomic(path, out.str());
}

std::ifstream open_for_read(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, std::string("cannot open ") + path);
  return in;
}

}  // namespace

extern "C" {

const char* fc_version(void) { return "0.1.0"; }

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "ok";
    case FC_ERR_NULL_POINTER: return "NullPointer";
    case FC_ERR_INTERNAL: return "Internal";
    case FC_ERR_INVALID_ARGUMENT: return to_string(ErrorKind::InvalidArgument);
    case FC_ERR_TRUNCATION: return to_string(ErrorKind::Truncation);
    case FC_ERR_DIMENSION_MISMATCH: return to_string(ErrorKind::DimensionMismatch);
    case FC_ERR_INFEASIBLE_TARGET: return to_string(ErrorKind::InfeasibleTarget);
    case FC_ERR_EMPTY_SEARCH_RANGE: return to_string(ErrorKind::EmptySearchRange);
    case FC_ERR_NONPOSITIVE_SIGMA: return to_string(ErrorKind::NonpositiveSigma);
    case FC_ERR_SAMPLE_RATE_TOO_LOW: return to_string(ErrorKind::SampleRateTooLow);
    case FC_ERR_AMPLITUDE_CAP_EXCEEDED: return to_string(ErrorKind::AmplitudeCapExceeded);
    case FC_ERR_STEP_TOO_LARGE: return to_string(ErrorKind::StepTooLarge);
    case FC_ERR_ZERO_PROBABILITY: return to_string(ErrorKind::ZeroProbability);
    case FC_ERR_INVALID_R: return to_string(ErrorKind::InvalidR);
    case FC_ERR_UNDERDETERMINED_GRID: return to_string(ErrorKind::UnderdeterminedGrid);
    case FC_ERR_SINGULAR_DESIGN: return to_string(ErrorKind::SingularDesign);
    case FC_ERR_FIT_DIVERGED: return to_string(ErrorKind::FitDiverged);
    case FC_ERR_TOO_FEW_RESAMPLES: return to_string(ErrorKind::TooFewResamples);
    case FC_ERR_ODD_CUTOFF: return to_string(ErrorKind::OddCutoff);
    case FC_ERR_IO: return to_string(ErrorKind::Io);
  }
  return "Unknown";
}

const char* fc_last_error_message(void) { return last_error.c_str(); }
int fc_last_infeasible_photon(void) { return last_infeasible; }

// ---- cavity states

fc_status fc_state_create(const double* re, const double* im, size_t len, fc_state** out) {
  FC_REQUIRE(re);
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_state{CavityState(gather(re, im, len))}; });
}

fc_status fc_state_coherent(double alpha_re, double alpha_im, int dim, fc_state** out) {
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_state{coherent_amplitudes({alpha_re, alpha_im}, dim)}; });
}

fc_status fc_state_fock(int n, int dim, fc_state** out) {
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_state{CavityState::fock(n, dim)}; });
}

fc_status fc_state_resize(const fc_state* state, int dim, fc_state** out) {
  FC_REQUIRE(state);
  FC_REQUIRE(out);
  return guarded([&] {
    if (state->value.support_max() >= dim) {
      throw Error(ErrorKind::DimensionMismatch, "state has support beyond dim " + std::to_string(dim));
    }
    *out = new fc_state{state->value.resized(dim)};
  });
}

int fc_state_dim(const fc_state* state) { return state != nullptr ? state->value.dim() : 0; }

fc_status fc_state_amplitude(const fc_state* state, int n, double* re, double* im) {
  FC_REQUIRE(state);
  FC_REQUIRE(re);
  FC_REQUIRE(im);
  if (n < 0 || n >= state->value.dim()) return fail(FC_ERR_INVALID_ARGUMENT, "index out of range");
  *re = state->value[n].real();
  *im = state->value[n].imag();
  return FC_OK;
}

fc_status fc_state_fidelity(const fc_state* a, const fc_state* b, double* out) {
  FC_REQUIRE(a);
  FC_REQUIRE(b);
  FC_REQUIRE(out);
  return guarded([&] { *out = state_fidelity(a->value, b->value); });
}

fc_status fc_state_mean_photon_number(const fc_state* state, double* out) {
  FC_REQUIRE(state);
  FC_REQUIRE(out);
  return guarded([&] {
    *out = expectation_value(number_operator(state->value.dim()), state->value).real();
  });
}

fc_status fc_state_parity(const fc_state* state, double* out) {
  FC_REQUIRE(state);
  FC_REQUIRE(out);
  return guarded([&] {
    *out = expectation_value(parity_operator(state->value.dim()), state->value).real();
  });
}

void fc_state_free(fc_state* state) { delete state; }

// ---- targets

fc_status fc_target_phase(int n_max, int k, int dim, fc_target** out) {
  FC_REQUIRE(out);
  return guarded([&] {
    TargetSpec spec{PhaseTarget{n_max, k}, dim};
    (void)realize(spec);
    *out = new fc_target{std::move(spec)};
  });
}

fc_status fc_target_squeezed(double r, double theta, int cutoff, int dim, fc_target** out) {
  FC_REQUIRE(out);
  return guarded([&] {
    TargetSpec spec{SqueezedTarget{r, theta, cutoff}, dim};
    (void)realize(spec);
    *out = new fc_target{std::move(spec)};
  });
}

fc_status fc_target_custom(const double* re, const double* im, size_t len, int dim,
                           fc_target** out) {
  FC_REQUIRE(re);
  FC_REQUIRE(out);
  return guarded([&] {
    TargetSpec spec{CustomTarget{gather(re, im, len)}, dim};
    (void)realize(spec);
    *out = new fc_target{std::move(spec)};
  });
}

int fc_target_n_max(const fc_target* target) { return target != nullptr ? target->value.n_max() : -1; }
int fc_target_dim(const fc_target* target) { return target != nullptr ? target->value.dim : 0; }

fc_status fc_target_state(const fc_target* target, fc_state** out) {
  FC_REQUIRE(target);
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_state{realize(target->value)}; });
}

void fc_target_free(fc_target* target) { delete target; }

// ---- planner

void fc_alpha_search_defaults(fc_alpha_search* search) {
  if (search == nullptr) return;
  const AlphaSearch d;
  *search = {d.alpha_min, d.alpha_max, d.coarse_step, d.refine_tol};
}

fc_status fc_plan_solve(const fc_target* target, double alpha_re, double alpha_im, double chi_qc,
                        double tau, fc_plan** out) {
  FC_REQUIRE(target);
  FC_REQUIRE(out);
  return guarded([&] {
    *out = new fc_plan{solve_drive_parameters(target->value, {alpha_re, alpha_im}, chi_qc, tau)};
  });
}

fc_status fc_plan_optimize(const fc_target* target, double chi_qc, double tau,
                           const fc_alpha_search* search, fc_plan** out) {
  FC_REQUIRE(target);
  FC_REQUIRE(out);
  return guarded([&] {
    AlphaSearch s;
    if (search != nullptr) {
      s = {search->alpha_min, search->alpha_max, search->coarse_step, search->refine_tol};
    }
    *out = new fc_plan{optimize_alpha(target->value, chi_qc, tau, s).plan};
  });
}

fc_status fc_plan_create(const fc_target* target, double alpha_re, double alpha_im, double chi_qc,
                         double tau, const fc_tone* tones, size_t count, fc_plan** out) {
  FC_REQUIRE(target);
  FC_REQUIRE(tones);
  FC_REQUIRE(out);
  return guarded([&] {
    ProtocolPlan plan;
    plan.alpha = {alpha_re, alpha_im};
    plan.chi_qc = chi_qc;
    plan.tau = tau;
    plan.target = target->value;
    for (size_t i = 0; i < count; ++i) {
      if (tones[i].n != static_cast<int>(i)) {
        throw Error(ErrorKind::InvalidArgument, "tones must be listed for n = 0..N in order");
      }
      if (!(tones[i].beta >= 0.0 && tones[i].beta <= kPi / 2.0 + 1e-12)) {
        throw Error(ErrorKind::InvalidArgument, "beta must lie in [0, pi/2]");
      }
      plan.tones.push_back({tones[i].n, tones[i].beta, tones[i].phi});
    }
    plan.predicted_success = success_probability(plan);
    *out = new fc_plan{std::move(plan)};
  });
}

fc_status fc_plan_alpha(const fc_plan* plan, double* re, double* im) {
  FC_REQUIRE(plan);
  FC_REQUIRE(re);
  FC_REQUIRE(im);
  *re = plan->value.alpha.real();
  *im = plan->value.alpha.imag();
  return FC_OK;
}

double fc_plan_chi_qc(const fc_plan* plan) { return plan != nullptr ? plan->value.chi_qc : 0.0; }
double fc_plan_tau(const fc_plan* plan) { return plan != nullptr ? plan->value.tau : 0.0; }
size_t fc_plan_tone_count(const fc_plan* plan) {
  return plan != nullptr ? plan->value.tones.size() : 0;
}

fc_status fc_plan_tone(const fc_plan* plan, size_t index, fc_tone* out) {
  FC_REQUIRE(plan);
  FC_REQUIRE(out);
  if (index >= plan->value.tones.size()) return fail(FC_ERR_INVALID_ARGUMENT, "tone index out of range");
  const ToneSpec& t = plan->value.tones[index];
  *out = {t.n, t.detuning(plan->value.chi_qc), t.beta, t.phi};
  return FC_OK;
}

double fc_plan_predicted_success(const fc_plan* plan) {
  return plan != nullptr ? plan->value.predicted_success : 0.0;
}

fc_status fc_plan_success_probability(const fc_plan* plan, double* out) {
  FC_REQUIRE(plan);
  FC_REQUIRE(out);
  return guarded([&] { *out = success_probability(plan->value); });
}

fc_status fc_plan_target_state(const fc_plan* plan, fc_state** out) {
  FC_REQUIRE(plan);
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_state{realize(plan->value.target)}; });
}

void fc_plan_free(fc_plan* plan) { delete plan; }

// ---- pulse

fc_status fc_gaussian_pulse_area(double peak, double sigma, double* out) {
  FC_REQUIRE(out);
  return guarded([&] { *out = gaussian_pulse_area(peak, sigma); });
}

fc_status fc_gaussian_peak_for_area(double area, double sigma, double* out) {
  FC_REQUIRE(out);
  return guarded([&] { *out = gaussian_peak_for_area(area, sigma); });
}

double fc_minimum_sample_rate(int n_max, double chi_qc) { return minimum_sample_rate(n_max, chi_qc); }

fc_status fc_waveform_synthesize(const fc_plan* plan, double sigma, double sample_rate,
                                 double omega_cap, fc_waveform** out) {
  FC_REQUIRE(plan);
  FC_REQUIRE(out);
  return guarded([&] {
    const double cap = omega_cap > 0.0 ? omega_cap : kDefaultOmegaCap;
    *out = new fc_waveform{synthesize_waveform(plan->value, sigma, sample_rate, cap)};
  });
}

size_t fc_waveform_sample_count(const fc_waveform* waveform) {
  return waveform != nullptr ? waveform->value.samples.size() : 0;
}
double fc_waveform_sample_rate(const fc_waveform* waveform) {
  return waveform != nullptr ? waveform->value.sample_rate : 0.0;
}
double fc_waveform_duration(const fc_waveform* waveform) {
  return waveform != nullptr ? waveform->value.duration : 0.0;
}

fc_status fc_waveform_sample(const fc_waveform* waveform, size_t index, double* re, double* im) {
  FC_REQUIRE(waveform);
  FC_REQUIRE(re);
  FC_REQUIRE(im);
  if (index >= waveform->value.samples.size()) return fail(FC_ERR_INVALID_ARGUMENT, "sample index out of range");
  *re = waveform->value.samples[index].real();
  *im = waveform->value.samples[index].imag();
  return FC_OK;
}

fc_status fc_waveform_write_csv(const fc_waveform* waveform, const char* path) {
  FC_REQUIRE(waveform);
  FC_REQUIRE(path);
  return guarded([&] {
    write_atomically(path, [&](std::ostream& out) { io::write_waveform_csv(out, waveform->value); });
  });
}

void fc_waveform_free(fc_waveform* waveform) { delete waveform; }

// ---- dynamics

fc_status fc_evolve_analytic(double alpha_re, double alpha_im, const fc_plan* plan, fc_joint** out) {
  FC_REQUIRE(plan);
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_joint{evolve_analytic({alpha_re, alpha_im}, plan->value)}; });
}

fc_status fc_evolve_numeric(double alpha_re, double alpha_im, const fc_waveform* waveform,
                            double chi_qc, const fc_kerr* kerr, int dim, double dt_max,
                            fc_joint** out, double* norm_drift) {
  FC_REQUIRE(waveform);
  FC_REQUIRE(out);
  return guarded([&] {
    KerrParams k;
    if (kerr != nullptr) k = {kerr->self_kerr, kerr->chi_prime};
    const double dt = dt_max > 0.0 ? dt_max : kDefaultDtMax;
    NumericEvolution result = evolve_numeric({alpha_re, alpha_im}, waveform->value, chi_qc, k, dim, dt);
    if (norm_drift != nullptr) *norm_drift = result.norm_drift;
    *out = new fc_joint{std::move(result.state)};
  });
}

int fc_joint_dim(const fc_joint* joint) { return joint != nullptr ? joint->value.dim() : 0; }

fc_status fc_joint_amplitude(const fc_joint* joint, int qubit, int n, double* re, double* im) {
  FC_REQUIRE(joint);
  FC_REQUIRE(re);
  FC_REQUIRE(im);
  if ((qubit != 0 && qubit != 1) || n < 0 || n >= joint->value.dim()) {
    return fail(FC_ERR_INVALID_ARGUMENT, "joint amplitude index out of range");
  }
  const complex v = qubit == 0 ? joint->value.ground()(n) : joint->value.excited()(n);
  *re = v.real();
  *im = v.imag();
  return FC_OK;
}

fc_status fc_postselect_excited(const fc_joint* joint, fc_state** out, double* probability) {
  FC_REQUIRE(joint);
  FC_REQUIRE(out);
  return guarded([&] {
    PostSelection ps = postselect_excited(joint->value);
    if (probability != nullptr) *probability = ps.probability;
    *out = new fc_state{std::move(ps.cavity)};
  });
}

void fc_joint_free(fc_joint* joint) { delete joint; }

// ---- tomography

void fc_grid_geometry_square(double extent, double spacing, fc_grid_geometry* out) {
  if (out != nullptr) *out = from_geometry(GridGeometry::square(extent, spacing));
}

fc_status fc_grid_covers(const fc_grid_geometry* geometry, const fc_state* state, int* covers) {
  FC_REQUIRE(geometry);
  FC_REQUIRE(state);
  FC_REQUIRE(covers);
  *covers = grid_covers(to_geometry(*geometry), state->value) ? 1 : 0;
  return FC_OK;
}

fc_status fc_wigner_exact_state(const fc_state* state, const fc_grid_geometry* geometry,
                                fc_wigner** out) {
  FC_REQUIRE(state);
  FC_REQUIRE(geometry);
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_wigner{wigner_exact(state->value, to_geometry(*geometry))}; });
}

fc_status fc_wigner_exact_density(const fc_density* rho, const fc_grid_geometry* geometry,
                                  fc_wigner** out) {
  FC_REQUIRE(rho);
  FC_REQUIRE(geometry);
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_wigner{wigner_exact(rho->value, to_geometry(*geometry))}; });
}

fc_status fc_wigner_simulate_measurement(const fc_wigner* exact, double reduction,
                                         double noise_sigma, uint64_t seed, fc_wigner** out) {
  FC_REQUIRE(exact);
  FC_REQUIRE(out);
  return guarded([&] {
    *out = new fc_wigner{simulate_measurement(exact->value, reduction, noise_sigma, seed)};
  });
}

fc_status fc_wigner_reduction_factor(const fc_wigner* grid, double* out) {
  FC_REQUIRE(grid);
  FC_REQUIRE(out);
  return guarded([&] { *out = reduction_factor(grid->value); });
}

fc_status fc_wigner_quadrature_variance(const fc_wigner* grid, double angle, double* out) {
  FC_REQUIRE(grid);
  FC_REQUIRE(out);
  return guarded([&] { *out = quadrature_variance(grid->value, angle); });
}

int fc_wigner_nx(const fc_wigner* grid) {
  return grid != nullptr ? static_cast<int>(grid->value.values.rows()) : 0;
}
int fc_wigner_np(const fc_wigner* grid) {
  return grid != nullptr ? static_cast<int>(grid->value.values.cols()) : 0;
}
int fc_wigner_is_measured(const fc_wigner* grid) {
  return grid != nullptr && grid->value.kind == GridKind::Measured ? 1 : 0;
}

fc_status fc_wigner_geometry(const fc_wigner* grid, fc_grid_geometry* out) {
  FC_REQUIRE(grid);
  FC_REQUIRE(out);
  *out = from_geometry(grid->value.geometry);
  return FC_OK;
}

fc_status fc_wigner_value(const fc_wigner* grid, int i, int j, double* out) {
  FC_REQUIRE(grid);
  FC_REQUIRE(out);
  const auto& v = grid->value.values;
  if (i < 0 || j < 0 || i >= v.rows() || j >= v.cols()) {
    return fail(FC_ERR_INVALID_ARGUMENT, "pixel index out of range");
  }
  *out = v(i, j);
  return FC_OK;
}

fc_status fc_wigner_write_csv(const fc_wigner* grid, const char* path) {
  FC_REQUIRE(grid);
  FC_REQUIRE(path);
  return guarded([&] {
    write_atomically(path, [&](std::ostream& out) { io::write_wigner_csv(out, grid->value); });
  });
}

fc_status fc_wigner_read_csv(const char* path, fc_wigner** out) {
  FC_REQUIRE(path);
  FC_REQUIRE(out);
  return guarded([&] {
    auto in = open_for_read(path);
    *out = new fc_wigner{io::read_wigner_csv(in)};
  });
}

void fc_wigner_free(fc_wigner* grid) { delete grid; }

fc_status fc_reconstruct_density(const fc_wigner* measured, int dim, int normalize_by_r,
                                 fc_density** out) {
  FC_REQUIRE(measured);
  FC_REQUIRE(out);
  return guarded([&] {
    *out = new fc_density{reconstruct_density_matrix(measured->value, dim, normalize_by_r != 0)};
  });
}

fc_status fc_density_from_state(const fc_state* state, fc_density** out) {
  FC_REQUIRE(state);
  FC_REQUIRE(out);
  return guarded([&] { *out = new fc_density{DensityMatrix::pure(state->value)}; });
}

int fc_density_dim(const fc_density* rho) { return rho != nullptr ? rho->value.dim() : 0; }

fc_status fc_density_entry(const fc_density* rho, int i, int j, double* re, double* im) {
  FC_REQUIRE(rho);
  FC_REQUIRE(re);
  FC_REQUIRE(im);
  if (i < 0 || j < 0 || i >= rho->value.dim() || j >= rho->value.dim()) {
    return fail(FC_ERR_INVALID_ARGUMENT, "matrix index out of range");
  }
  *re = rho->value.entries()(i, j).real();
  *im = rho->value.entries()(i, j).imag();
  return FC_OK;
}

fc_status fc_density_fidelity(const fc_density* rho, const fc_state* target, double* out) {
  FC_REQUIRE(rho);
  FC_REQUIRE(target);
  FC_REQUIRE(out);
  return guarded([&] { *out = fidelity(rho->value, target->value); });
}

fc_status fc_density_write_csv(const fc_density* rho, const char* path) {
  FC_REQUIRE(rho);
  FC_REQUIRE(path);
  return guarded([&] {
    write_atomically(path, [&](std::ostream& out) { io::write_density_csv(out, rho->value); });
  });
}

fc_status fc_density_read_csv(const char* path, fc_density** out) {
  FC_REQUIRE(path);
  FC_REQUIRE(out);
  return guarded([&] {
    auto in = open_for_read(path);
    *out = new fc_density{io::read_density_csv(in)};
  });
}

void fc_density_free(fc_density* rho) { delete rho; }

fc_status fc_bootstrap(const fc_wigner* measured, const fc_state* target, int dim, int resamples,
                       uint64_t seed, fc_bootstrap_result* out) {
  FC_REQUIRE(measured);
  FC_REQUIRE(target);
  FC_REQUIRE(out);
  return guarded([&] {
    const BootstrapSummary s = bootstrap_statistics(measured->value, target->value, dim, resamples, seed);
    *out = {s.reduction.mean, s.reduction.stddev, s.fidelity.mean, s.fidelity.stddev, s.resamples};
  });
}

// ---- files

fc_status fc_write_file_atomic(const char* path, const char* data, size_t len) {
  FC_REQUIRE(path);
  if (data == nullptr && len > 0) return fail(FC_ERR_NULL_POINTER, "data is null");
  return guarded([&] { io::write_file_atomic(path, std::string(data != nullptr ? data : "", len)); });
}

}  // extern "C"
