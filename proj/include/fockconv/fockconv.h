/*
 * fockconv C API.
 *
 * Every object is an opaque handle created by an fc_*_create / fc_* builder
 * and released with the matching fc_*_free. Functions returning fc_status
 * leave their out-parameters untouched on failure; fc_last_error_message()
 * then describes the failure for the calling thread.
 *
 * Units are SI throughout: angular frequencies in rad/s, times in s,
 * sample rates in Hz.
 */
#ifndef FOCKCONV_H
#define FOCKCONV_H

#include <stddef.h>
#include <stdint.h>

#if defined(FOCKCONV_BUILDING_LIBRARY)
#define FOCKCONV_API __attribute__((visibility("default")))
#else
#define FOCKCONV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_INVALID_ARGUMENT = 1,
  FC_ERR_TRUNCATION = 2,
  FC_ERR_DIMENSION_MISMATCH = 3,
  FC_ERR_INFEASIBLE_TARGET = 4,
  FC_ERR_EMPTY_SEARCH_RANGE = 5,
  FC_ERR_NONPOSITIVE_SIGMA = 6,
  FC_ERR_SAMPLE_RATE_TOO_LOW = 7,
  FC_ERR_AMPLITUDE_CAP_EXCEEDED = 8,
  FC_ERR_STEP_TOO_LARGE = 9,
  FC_ERR_ZERO_PROBABILITY = 10,
  FC_ERR_INVALID_R = 11,
  FC_ERR_UNDERDETERMINED_GRID = 12,
  FC_ERR_SINGULAR_DESIGN = 13,
  FC_ERR_FIT_DIVERGED = 14,
  FC_ERR_TOO_FEW_RESAMPLES = 15,
  FC_ERR_ODD_CUTOFF = 16,
  FC_ERR_IO = 17,
  FC_ERR_NULL_POINTER = 18,
  FC_ERR_INTERNAL = 19
} fc_status;

FOCKCONV_API const char* fc_version(void);
FOCKCONV_API const char* fc_status_name(fc_status status);
/* Message of the last failed call on this thread; empty string if none. */
FOCKCONV_API const char* fc_last_error_message(void);
/* Photon number named by the last FC_ERR_INFEASIBLE_TARGET on this thread, else -1. */
FOCKCONV_API int fc_last_infeasible_photon(void);

typedef struct fc_state fc_state;
typedef struct fc_target fc_target;
typedef struct fc_plan fc_plan;
typedef struct fc_waveform fc_waveform;
typedef struct fc_joint fc_joint;
typedef struct fc_wigner fc_wigner;
typedef struct fc_density fc_density;

/* ---- cavity states ---------------------------------------------------- */

FOCKCONV_API fc_status fc_state_create(const double* re, const double* im, size_t len,
                                       fc_state** out);
FOCKCONV_API fc_status fc_state_coherent(double alpha_re, double alpha_im, int dim,
                                         fc_state** out);
FOCKCONV_API fc_status fc_state_fock(int n, int dim, fc_state** out);
FOCKCONV_API fc_status fc_state_resize(const fc_state* state, int dim, fc_state** out);
FOCKCONV_API int fc_state_dim(const fc_state* state);
FOCKCONV_API fc_status fc_state_amplitude(const fc_state* state, int n, double* re, double* im);
/* |<a|b>|^2 */
FOCKCONV_API fc_status fc_state_fidelity(const fc_state* a, const fc_state* b, double* out);
FOCKCONV_API fc_status fc_state_mean_photon_number(const fc_state* state, double* out);
FOCKCONV_API fc_status fc_state_parity(const fc_state* state, double* out);
FOCKCONV_API void fc_state_free(fc_state* state);

/* ---- targets ------------------------------------------------------------ */

FOCKCONV_API fc_status fc_target_phase(int n_max, int k, int dim, fc_target** out);
FOCKCONV_API fc_status fc_target_squeezed(double r, double theta, int cutoff, int dim,
                                          fc_target** out);
FOCKCONV_API fc_status fc_target_custom(const double* re, const double* im, size_t len, int dim,
                                        fc_target** out);
FOCKCONV_API int fc_target_n_max(const fc_target* target);
FOCKCONV_API int fc_target_dim(const fc_target* target);
FOCKCONV_API fc_status fc_target_state(const fc_target* target, fc_state** out);
FOCKCONV_API void fc_target_free(fc_target* target);

/* ---- planner ------------------------------------------------------------ */

typedef struct fc_tone {
  int n;
  double detuning; /* n * chi_qc, rad/s */
  double beta;     /* pulse area, rad */
  double phi;      /* drive phase, rad */
} fc_tone;

typedef struct fc_alpha_search {
  double alpha_min;
  double alpha_max;
  double coarse_step;
  double refine_tol;
} fc_alpha_search;

FOCKCONV_API void fc_alpha_search_defaults(fc_alpha_search* search);
FOCKCONV_API fc_status fc_plan_solve(const fc_target* target, double alpha_re, double alpha_im,
                                     double chi_qc, double tau, fc_plan** out);
/* search may be NULL for defaults. */
FOCKCONV_API fc_status fc_plan_optimize(const fc_target* target, double chi_qc, double tau,
                                        const fc_alpha_search* search, fc_plan** out);
/* Rebuilds a plan from stored tone parameters (tones must cover n = 0..N). */
FOCKCONV_API fc_status fc_plan_create(const fc_target* target, double alpha_re, double alpha_im,
                                      double chi_qc, double tau, const fc_tone* tones,
                                      size_t count, fc_plan** out);
FOCKCONV_API fc_status fc_plan_alpha(const fc_plan* plan, double* re, double* im);
FOCKCONV_API double fc_plan_chi_qc(const fc_plan* plan);
FOCKCONV_API double fc_plan_tau(const fc_plan* plan);
FOCKCONV_API size_t fc_plan_tone_count(const fc_plan* plan);
FOCKCONV_API fc_status fc_plan_tone(const fc_plan* plan, size_t index, fc_tone* out);
FOCKCONV_API double fc_plan_predicted_success(const fc_plan* plan);
/* Re-evaluates sum |c_n|^2 sin^2 beta_n from the tones. */
FOCKCONV_API fc_status fc_plan_success_probability(const fc_plan* plan, double* out);
FOCKCONV_API fc_status fc_plan_target_state(const fc_plan* plan, fc_state** out);
FOCKCONV_API void fc_plan_free(fc_plan* plan);

/* ---- pulse ---------------------------------------------------------------- */

FOCKCONV_API fc_status fc_gaussian_pulse_area(double peak, double sigma, double* out);
FOCKCONV_API fc_status fc_gaussian_peak_for_area(double area, double sigma, double* out);
FOCKCONV_API double fc_minimum_sample_rate(int n_max, double chi_qc);
/* omega_cap <= 0 selects the default per-tone cap (2 pi x 0.3 MHz). */
FOCKCONV_API fc_status fc_waveform_synthesize(const fc_plan* plan, double sigma,
                                              double sample_rate, double omega_cap,
                                              fc_waveform** out);
FOCKCONV_API size_t fc_waveform_sample_count(const fc_waveform* waveform);
FOCKCONV_API double fc_waveform_sample_rate(const fc_waveform* waveform);
FOCKCONV_API double fc_waveform_duration(const fc_waveform* waveform);
FOCKCONV_API fc_status fc_waveform_sample(const fc_waveform* waveform, size_t index, double* re,
                                          double* im);
FOCKCONV_API fc_status fc_waveform_write_csv(const fc_waveform* waveform, const char* path);
FOCKCONV_API void fc_waveform_free(fc_waveform* waveform);

/* ---- dynamics ------------------------------------------------------------- */

typedef struct fc_kerr {
  double self_kerr; /* K, rad/s */
  double chi_prime; /* chi', rad/s */
} fc_kerr;

FOCKCONV_API fc_status fc_evolve_analytic(double alpha_re, double alpha_im, const fc_plan* plan,
                                          fc_joint** out);
/* kerr may be NULL; norm_drift may be NULL. dt_max <= 0 selects 1 ns. */
FOCKCONV_API fc_status fc_evolve_numeric(double alpha_re, double alpha_im,
                                         const fc_waveform* waveform, double chi_qc,
                                         const fc_kerr* kerr, int dim, double dt_max,
                                         fc_joint** out, double* norm_drift);
FOCKCONV_API int fc_joint_dim(const fc_joint* joint);
/* qubit: 0 for |g>, 1 for |e>. */
FOCKCONV_API fc_status fc_joint_amplitude(const fc_joint* joint, int qubit, int n, double* re,
                                          double* im);
FOCKCONV_API fc_status fc_postselect_excited(const fc_joint* joint, fc_state** out,
                                             double* probability);
FOCKCONV_API void fc_joint_free(fc_joint* joint);

/* ---- tomography ----------------------------------------------------------- */

typedef struct fc_grid_geometry {
  double x_min, x_max, dx;
  double p_min, p_max, dp;
} fc_grid_geometry;

typedef struct fc_bootstrap_result {
  double r_mean, r_std;
  double f_mean, f_std;
  int resamples;
} fc_bootstrap_result;

FOCKCONV_API void fc_grid_geometry_square(double extent, double spacing, fc_grid_geometry* out);
/* Sets *covers to 1 when the grid reaches 3 + sqrt(N) in every direction. */
FOCKCONV_API fc_status fc_grid_covers(const fc_grid_geometry* geometry, const fc_state* state,
                                      int* covers);
FOCKCONV_API fc_status fc_wigner_exact_state(const fc_state* state,
                                             const fc_grid_geometry* geometry, fc_wigner** out);
FOCKCONV_API fc_status fc_wigner_exact_density(const fc_density* rho,
                                               const fc_grid_geometry* geometry, fc_wigner** out);
FOCKCONV_API fc_status fc_wigner_simulate_measurement(const fc_wigner* exact, double reduction,
                                                      double noise_sigma, uint64_t seed,
                                                      fc_wigner** out);
FOCKCONV_API fc_status fc_wigner_reduction_factor(const fc_wigner* grid, double* out);
FOCKCONV_API fc_status fc_wigner_quadrature_variance(const fc_wigner* grid, double angle,
                                                     double* out);
FOCKCONV_API int fc_wigner_nx(const fc_wigner* grid);
FOCKCONV_API int fc_wigner_np(const fc_wigner* grid);
FOCKCONV_API int fc_wigner_is_measured(const fc_wigner* grid);
FOCKCONV_API fc_status fc_wigner_geometry(const fc_wigner* grid, fc_grid_geometry* out);
FOCKCONV_API fc_status fc_wigner_value(const fc_wigner* grid, int i, int j, double* out);
FOCKCONV_API fc_status fc_wigner_write_csv(const fc_wigner* grid, const char* path);
FOCKCONV_API fc_status fc_wigner_read_csv(const char* path, fc_wigner** out);
FOCKCONV_API void fc_wigner_free(fc_wigner* grid);

FOCKCONV_API fc_status fc_reconstruct_density(const fc_wigner* measured, int dim,
                                              int normalize_by_r, fc_density** out);
FOCKCONV_API fc_status fc_density_from_state(const fc_state* state, fc_density** out);
FOCKCONV_API int fc_density_dim(const fc_density* rho);
FOCKCONV_API fc_status fc_density_entry(const fc_density* rho, int i, int j, double* re,
                                        double* im);
FOCKCONV_API fc_status fc_density_fidelity(const fc_density* rho, const fc_state* target,
                                           double* out);
FOCKCONV_API fc_status fc_density_write_csv(const fc_density* rho, const char* path);
FOCKCONV_API fc_status fc_density_read_csv(const char* path, fc_density** out);
FOCKCONV_API void fc_density_free(fc_density* rho);

FOCKCONV_API fc_status fc_bootstrap(const fc_wigner* measured, const fc_state* target, int dim,
                                    int resamples, uint64_t seed, fc_bootstrap_result* out);

/* ---- files ----------------------------------------------------------------- */

/* Writes `len` bytes to a temp file next to `path`, then renames it over `path`. */
FOCKCONV_API fc_status fc_write_file_atomic(const char* path, const char* data, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* FOCKCONV_H */
