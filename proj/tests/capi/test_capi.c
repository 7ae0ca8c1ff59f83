/* Exercises the C API from plain C against the shared library. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fockconv/fockconv.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

#define EXPECT_OK(call) EXPECT((call) == FC_OK)

static const double kPi = 3.14159265358979323846;

static void test_states(void) {
  fc_state* coh = NULL;
  double re = 0.0, im = 0.0, v = 0.0;
  EXPECT_OK(fc_state_coherent(1.63, 0.0, 20, &coh));
  EXPECT(fc_state_dim(coh) == 20);
  EXPECT_OK(fc_state_amplitude(coh, 0, &re, &im));
  EXPECT(fabs(re * re + im * im - 0.0701654) < 1e-6);
  EXPECT_OK(fc_state_mean_photon_number(coh, &v));
  EXPECT(fabs(v - 2.6569) < 1e-6);
  EXPECT(fc_state_amplitude(coh, 20, &re, &im) == FC_ERR_INVALID_ARGUMENT);
  fc_state_free(coh);

  fc_state* bad = NULL;
  EXPECT(fc_state_coherent(1.63, 0.0, 3, &bad) == FC_ERR_TRUNCATION);
  EXPECT(bad == NULL);
  EXPECT(strstr(fc_last_error_message(), "dim") != NULL);

  fc_state* vac = NULL;
  EXPECT_OK(fc_state_coherent(0.9, 0.0, 32, &vac));
  EXPECT_OK(fc_state_parity(vac, &v));
  EXPECT(fabs(v - exp(-2.0 * 0.81)) < 1e-6);
  fc_state_free(vac);

  const double zr[3] = {0.0, 0.0, 0.0};
  fc_state* zero = NULL;
  EXPECT(fc_state_create(zr, zr, 3, &zero) == FC_ERR_INVALID_ARGUMENT);
  EXPECT(fc_state_create(NULL, zr, 3, &zero) == FC_ERR_NULL_POINTER);
  fc_state_free(NULL);
}

static void test_pipeline(void) {
  const double chi = -2.0 * kPi * 1.44e6;
  const double sigma = 0.36e-6;
  fc_target* target = NULL;
  EXPECT_OK(fc_target_phase(5, 0, 24, &target));
  EXPECT(fc_target_n_max(target) == 5);

  fc_plan* plan = NULL;
  EXPECT_OK(fc_plan_solve(target, 1.63, 0.0, chi, 4.0 * sigma, &plan));
  EXPECT(fc_plan_tone_count(plan) == 6);
  EXPECT(fabs(fc_plan_predicted_success(plan) - 0.4209924) < 1e-6);
  fc_tone tone;
  EXPECT_OK(fc_plan_tone(plan, 0, &tone));
  EXPECT(tone.beta == kPi / 2);

  fc_joint* joint = NULL;
  fc_state* cavity = NULL;
  fc_state* ideal = NULL;
  double prob = 0.0, fid = 0.0;
  EXPECT_OK(fc_evolve_analytic(1.63, 0.0, plan, &joint));
  EXPECT_OK(fc_postselect_excited(joint, &cavity, &prob));
  EXPECT_OK(fc_target_state(target, &ideal));
  EXPECT_OK(fc_state_fidelity(cavity, ideal, &fid));
  EXPECT(fid >= 1.0 - 1e-10);
  EXPECT(fabs(prob - fc_plan_predicted_success(plan)) < 1e-10);
  fc_joint_free(joint);
  fc_state_free(cavity);

  fc_waveform* wf = NULL;
  EXPECT(fc_waveform_synthesize(plan, sigma, 100e6, 0.0, &wf) == FC_ERR_SAMPLE_RATE_TOO_LOW);
  EXPECT_OK(fc_waveform_synthesize(plan, sigma, 200e6, 0.0, &wf));
  EXPECT(fc_waveform_sample_count(wf) == 289);
  double drift = 1.0;
  EXPECT_OK(fc_evolve_numeric(1.63, 0.0, wf, chi, NULL, 24, 0.0, &joint, &drift));
  EXPECT(drift <= 1e-8);
  EXPECT_OK(fc_postselect_excited(joint, &cavity, &prob));
  EXPECT_OK(fc_state_fidelity(cavity, ideal, &fid));
  EXPECT(fid >= 0.98);
  fc_joint_free(joint);
  fc_state_free(cavity);
  fc_waveform_free(wf);

  /* Rebuilding from stored tones reproduces the plan. */
  fc_tone tones[6];
  for (size_t i = 0; i < 6; ++i) EXPECT_OK(fc_plan_tone(plan, i, &tones[i]));
  fc_plan* copy = NULL;
  EXPECT_OK(fc_plan_create(target, 1.63, 0.0, chi, 4.0 * sigma, tones, 6, &copy));
  EXPECT(fabs(fc_plan_predicted_success(copy) - fc_plan_predicted_success(plan)) < 1e-15);
  EXPECT(fc_plan_create(target, 1.63, 0.0, chi, 4.0 * sigma, tones + 1, 5, &copy) != FC_OK);
  fc_plan_free(copy);

  fc_plan_free(plan);
  fc_state_free(ideal);
  fc_target_free(target);
}

static void test_infeasible(void) {
  fc_target* target = NULL;
  fc_plan* plan = NULL;
  EXPECT_OK(fc_target_phase(2, 0, 8, &target));
  EXPECT(fc_plan_solve(target, 0.0, 0.0, -1e7, 1.44e-6, &plan) == FC_ERR_INFEASIBLE_TARGET);
  EXPECT(fc_last_infeasible_photon() == 1);
  EXPECT(strcmp(fc_status_name(FC_ERR_INFEASIBLE_TARGET), "InfeasibleTarget") == 0);
  fc_target_free(target);

  fc_alpha_search search;
  fc_alpha_search_defaults(&search);
  EXPECT(search.alpha_min == 0.05 && search.alpha_max == 4.0);
  search.alpha_max = 0.01;
  EXPECT_OK(fc_target_phase(5, 0, 16, &target));
  EXPECT(fc_plan_optimize(target, -1e7, 1.44e-6, &search, &plan) == FC_ERR_EMPTY_SEARCH_RANGE);
  EXPECT_OK(fc_plan_optimize(target, -1e7, 1.44e-6, NULL, &plan));
  double are = 0.0, aim = 0.0;
  EXPECT_OK(fc_plan_alpha(plan, &are, &aim));
  EXPECT(fabs(are - 1.63) < 0.05);
  fc_plan_free(plan);
  fc_target_free(target);
}

static void test_tomography(const char* tmpdir) {
  fc_state* psi = NULL;
  fc_target* target = NULL;
  EXPECT_OK(fc_target_phase(5, 0, 8, &target));
  EXPECT_OK(fc_target_state(target, &psi));
  fc_grid_geometry g;
  fc_grid_geometry_square(3.5, 0.1, &g);
  fc_wigner* exact = NULL;
  fc_wigner* measured = NULL;
  EXPECT_OK(fc_wigner_exact_state(psi, &g, &exact));
  EXPECT(fc_wigner_nx(exact) == 71 && fc_wigner_np(exact) == 71);
  EXPECT(!fc_wigner_is_measured(exact));
  EXPECT(fc_wigner_simulate_measurement(exact, 1.5, 0.0, 1, &measured) == FC_ERR_INVALID_R);
  EXPECT_OK(fc_wigner_simulate_measurement(exact, 0.82, 0.01, 1, &measured));
  double r = 0.0, f = 0.0;
  EXPECT_OK(fc_wigner_reduction_factor(measured, &r));
  EXPECT(fabs(r - 0.82) < 0.02);

  fc_density* rho = NULL;
  EXPECT_OK(fc_reconstruct_density(measured, 8, 1, &rho));
  EXPECT_OK(fc_density_fidelity(rho, psi, &f));
  EXPECT(f > 0.95);

  char path[512];
  snprintf(path, sizeof path, "%s/capi_grid.csv", tmpdir);
  EXPECT_OK(fc_wigner_write_csv(measured, path));
  fc_wigner* back = NULL;
  EXPECT_OK(fc_wigner_read_csv(path, &back));
  EXPECT(fc_wigner_is_measured(back));
  double a = 0.0, b = 0.0;
  EXPECT_OK(fc_wigner_value(measured, 10, 20, &a));
  EXPECT_OK(fc_wigner_value(back, 10, 20, &b));
  EXPECT(a == b);
  fc_wigner_free(back);

  snprintf(path, sizeof path, "%s/capi_rho.csv", tmpdir);
  EXPECT_OK(fc_density_write_csv(rho, path));
  fc_density* rho2 = NULL;
  EXPECT_OK(fc_density_read_csv(path, &rho2));
  EXPECT(fc_density_dim(rho2) == 8);
  fc_density_free(rho2);
  EXPECT(fc_density_read_csv("/nonexistent/rho.csv", &rho2) == FC_ERR_IO);

  fc_bootstrap_result boot;
  EXPECT(fc_bootstrap(measured, psi, 8, 10, 1, &boot) == FC_ERR_TOO_FEW_RESAMPLES);
  EXPECT_OK(fc_bootstrap(measured, psi, 8, 60, 1, &boot));
  EXPECT(boot.resamples == 60);
  EXPECT(boot.f_std > 0.0 && boot.f_std < 0.05);

  fc_grid_geometry tiny;
  fc_grid_geometry_square(0.5, 0.25, &tiny);
  fc_wigner* small = NULL;
  EXPECT_OK(fc_wigner_exact_state(psi, &tiny, &small));
  fc_density* none = NULL;
  EXPECT(fc_reconstruct_density(small, 8, 1, &none) == FC_ERR_UNDERDETERMINED_GRID);
  fc_wigner_free(small);

  fc_density_free(rho);
  fc_wigner_free(measured);
  fc_wigner_free(exact);
  fc_state_free(psi);
  fc_target_free(target);
}

static void test_squeezed(void) {
  fc_target* target = NULL;
  EXPECT(fc_target_squeezed(0.8, 0.0, 7, 16, &target) == FC_ERR_ODD_CUTOFF);
  EXPECT_OK(fc_target_squeezed(0.8, 0.0, 8, 10, &target));
  fc_state* s = NULL;
  EXPECT_OK(fc_target_state(target, &s));
  fc_grid_geometry g;
  fc_grid_geometry_square(4.0, 0.1, &g);
  fc_wigner* w = NULL;
  EXPECT_OK(fc_wigner_exact_state(s, &g, &w));
  double v = 0.0;
  EXPECT_OK(fc_wigner_quadrature_variance(w, kPi / 2, &v));
  EXPECT(v > 1.0);
  fc_wigner_free(w);
  fc_state_free(s);
  fc_target_free(target);
}

int main(int argc, char** argv) {
  const char* tmpdir = argc > 1 ? argv[1] : ".";
  EXPECT(strlen(fc_version()) > 0);
  EXPECT(strcmp(fc_last_error_message(), "") == 0);
  test_states();
  test_pipeline();
  test_infeasible();
  test_tomography(tmpdir);
  test_squeezed();
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}
