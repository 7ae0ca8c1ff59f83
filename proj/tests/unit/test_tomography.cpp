#include <cmath>
#include <random>

#include "doctest.h"
#include "fockconv/error.hpp"
#include "fockconv/targets.hpp"
#include "fockconv/tomography.hpp"

using namespace fockconv;

namespace {

const GridGeometry kDefaultGrid = GridGeometry::square(3.5, 0.1);

CavityState random_state(std::mt19937_64& rng, int n_max, int dim) {
  std::normal_distribution<double> g;
  CVector v = CVector::Zero(dim);
  for (int n = 0; n <= n_max; ++n) v(n) = complex(g(rng), g(rng));
  return CavityState(v);
}

double rms(const Eigen::MatrixXd& m) { return std::sqrt(m.squaredNorm() / static_cast<double>(m.size())); }

template <class F>
void check_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected " << to_string(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("wigner_vacuum_and_single_photon_at_origin") {
  const GridGeometry g = GridGeometry::square(1.0, 0.5);
  const WignerGrid vac = wigner_exact(CavityState::fock(0, 4), g);
  const WignerGrid one = wigner_exact(CavityState::fock(1, 4), g);
  CHECK(vac.kind == GridKind::Exact);
  CHECK(std::abs(vac.values(2, 2) - 0.63662) <= 1e-5);
  CHECK(std::abs(vac.values(2, 2) - 2.0 / kPi) <= 1e-9);
  CHECK(std::abs(one.values(2, 2) + 2.0 / kPi) <= 1e-9);
}

TEST_CASE("wigner_coherent_closed_form") {
  const CavityState coh = coherent_amplitudes(1.0, 30);
  const WignerGrid w = wigner_exact(coh, GridGeometry::square(3.0, 0.25));
  for (int i = 0; i < w.geometry.nx(); ++i) {
    for (int j = 0; j < w.geometry.np(); ++j) {
      const double dx = w.geometry.x(i) - 1.0;
      const double p = w.geometry.p(j);
      CHECK(std::abs(w.values(i, j) - (2.0 / kPi) * std::exp(-2.0 * (dx * dx + p * p))) <= 1e-7);
    }
  }
}

TEST_CASE("wigner_bound_normalization_and_purity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    const CavityState s = random_state(rng, 5, 8);
    const WignerGrid w = wigner_exact(s, kDefaultGrid);
    CHECK(w.values.cwiseAbs().maxCoeff() <= 2.0 / kPi + 1e-9);
    CHECK(std::abs(reduction_factor(w) - 1.0) <= 1e-3);
    WignerGrid sq = w;
    sq.values = w.values.cwiseAbs2();
    CHECK(std::abs(kPi * reduction_factor(sq) - 1.0) <= 0.01);
  }
}

TEST_CASE("wigner_mixture_is_linear") {
  const CavityState a = phase_state(3, 1, 6);
  const CavityState b = squeezed_state(0.5, 0.3, 4, 6);
  const double p = 0.3;
  const DensityMatrix mix(p * DensityMatrix::pure(a).entries() + (1 - p) * DensityMatrix::pure(b).entries());
  const GridGeometry g = GridGeometry::square(3.0, 0.2);
  const Eigen::MatrixXd expected = p * wigner_exact(a, g).values + (1 - p) * wigner_exact(b, g).values;
  CHECK((wigner_exact(mix, g).values - expected).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs(kPi * reduction_factor(WignerGrid{g, wigner_exact(mix, g).values.cwiseAbs2()}) -
                 mix.purity()) <= 0.01);
}

TEST_CASE("simulate_measurement_scaling_and_noise") {
  const WignerGrid vac = wigner_exact(CavityState::fock(0, 2), kDefaultGrid);
  const WignerGrid same = simulate_measurement(vac, 1.0, 0.0, 1);
  CHECK(same.kind == GridKind::Measured);
  CHECK(same.values == vac.values);

  const WignerGrid scaled = simulate_measurement(vac, 0.8, 0.0, 1);
  CHECK(std::abs(scaled.values(35, 35) - 0.50930) <= 1e-5);
  CHECK(std::abs(reduction_factor(scaled) - 0.8 * reduction_factor(vac)) <= 1e-12);

  const WignerGrid noisy = simulate_measurement(vac, 0.8, 0.01, 7);
  CHECK(std::abs(reduction_factor(noisy) - 0.80) <= 0.01);
  const WignerGrid again = simulate_measurement(vac, 0.8, 0.01, 7);
  CHECK(noisy.values == again.values);
  const WignerGrid other = simulate_measurement(vac, 0.8, 0.01, 8);
  CHECK(noisy.values != other.values);

  check_error(ErrorKind::InvalidR, [&] { simulate_measurement(vac, 0.0, 0.0, 1); });
  check_error(ErrorKind::InvalidR, [&] { simulate_measurement(vac, 1.2, 0.0, 1); });
  check_error(ErrorKind::InvalidArgument, [&] { simulate_measurement(noisy, 0.9, 0.0, 1); });
}

TEST_CASE("reduction_factor_examples") {
  const WignerGrid vac = wigner_exact(CavityState::fock(0, 2), kDefaultGrid);
  CHECK(std::abs(reduction_factor(vac) - 1.0) <= 0.005);
  WignerGrid zero = vac;
  zero.values.setZero();
  CHECK(reduction_factor(zero) == 0.0);
}

TEST_CASE("reconstruct_single_photon") {
  const CavityState one = CavityState::fock(1, 6);
  const WignerGrid w = wigner_exact(one, GridGeometry::square(3.5, 0.15));
  const DensityMatrix rho = reconstruct_density_matrix(w, 6, true);
  CHECK(rho.entries()(1, 1).real() >= 0.999);
  CHECK(fidelity(rho, one) >= 0.999);
}

TEST_CASE("reconstruct_phase5_noiseless_and_noisy") {
  const CavityState psi = phase_state(5, 0, 8);
  const WignerGrid w = wigner_exact(psi, kDefaultGrid);
  CHECK(fidelity(reconstruct_density_matrix(w, 8, true), psi) >= 0.995);
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = reconstruct_density_matrix(simulate_measurement(w, 0.8, 0.01, seed), 8, true);
    mean += fidelity(rho, psi) / 10.0;
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.entries());
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    CHECK(std::abs(rho.entries().trace() - complex(1.0)) <= 1e-10);
  }
  CHECK(mean >= 0.95);
}

TEST_CASE("reconstruct_forward_map_consistency") {
  std::mt19937_64 rng(23);
  const GridGeometry g = GridGeometry::square(3.5, 0.2);
  for (int trial = 0; trial < 3; ++trial) {
    const CavityState s = random_state(rng, 3, 6);
    const WignerGrid w = wigner_exact(s, g);
    const DensityMatrix rho = reconstruct_density_matrix(w, 6, false);
    CHECK(rms(wigner_exact(rho, g).values - w.values) <= 1e-6);
  }
}

TEST_CASE("reconstruct_errors") {
  const WignerGrid small = wigner_exact(CavityState::fock(0, 2), GridGeometry::square(0.5, 0.25));
  check_error(ErrorKind::UnderdeterminedGrid, [&] { reconstruct_density_matrix(small, 8, true); });

  GridGeometry line = GridGeometry::square(3.5, 0.1);
  line.p_min = 0.0;
  line.p_max = 0.0;
  const WignerGrid axis = wigner_exact(CavityState::fock(1, 3), line);
  check_error(ErrorKind::SingularDesign, [&] { reconstruct_density_matrix(axis, 3, false); });
}

TEST_CASE("density_matrix_invariants_enforced") {
  CMatrix bad = CMatrix::Identity(2, 2) * 0.5;
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix{bad}, Error);
  CHECK_THROWS_AS(DensityMatrix{CMatrix::Identity(2, 2)}, Error);
  CMatrix negative = CMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, Error);
  CHECK(DensityMatrix::maximally_mixed(4).purity() == doctest::Approx(0.25));
}

TEST_CASE("project_to_density_clips_and_redistributes") {
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, 0) = 0.7;
  h(1, 1) = 0.4;
  h(2, 2) = -0.1;
  const CMatrix p = project_to_density(h);
  CHECK(std::abs(p(2, 2)) <= 1e-15);
  CHECK(std::abs(p(0, 0).real() - 0.65) <= 1e-12);
  CHECK(std::abs(p(1, 1).real() - 0.35) <= 1e-12);
}

TEST_CASE("fidelity_examples") {
  const CavityState psi = phase_state(3, 2, 8);
  CHECK(fidelity(DensityMatrix::pure(psi), psi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(DensityMatrix::maximally_mixed(8), psi) == doctest::Approx(0.125).epsilon(1e-14));
  check_error(ErrorKind::DimensionMismatch, [&] { fidelity(DensityMatrix::maximally_mixed(4), psi); });
}

TEST_CASE("bootstrap_noiseless_has_no_spread") {
  const CavityState psi = phase_state(5, 0, 8);
  const WignerGrid w = simulate_measurement(wigner_exact(psi, kDefaultGrid), 1.0, 0.0, 0);
  const BootstrapSummary b = bootstrap_statistics(w, psi, 8, 50, 1);
  CHECK(b.resamples == 50);
  CHECK(b.reduction.stddev <= 1e-6);
  CHECK(b.fidelity.stddev <= 1e-6);
}

TEST_CASE("bootstrap_noisy_spread_and_seed_consistency") {
  const CavityState psi = phase_state(5, 0, 8);
  const WignerGrid w = simulate_measurement(wigner_exact(psi, kDefaultGrid), 1.0, 0.01, 5);
  const BootstrapSummary a = bootstrap_statistics(w, psi, 8, 200, 1);
  const BootstrapSummary b = bootstrap_statistics(w, psi, 8, 200, 2);
  CHECK(a.fidelity.stddev > 0.001);
  CHECK(a.fidelity.stddev < 0.05);
  CHECK(std::abs(a.fidelity.mean - b.fidelity.mean) <= 2.0 * std::max(a.fidelity.stddev, b.fidelity.stddev));
  CHECK(std::abs(a.reduction.mean - b.reduction.mean) <= 2.0 * std::max(a.reduction.stddev, b.reduction.stddev));
  const BootstrapSummary repeat = bootstrap_statistics(w, psi, 8, 200, 1);
  CHECK(repeat.fidelity.mean == a.fidelity.mean);
  CHECK(repeat.reduction.stddev == a.reduction.stddev);
  check_error(ErrorKind::TooFewResamples, [&] { bootstrap_statistics(w, psi, 8, 49, 1); });
}

TEST_CASE("quadrature_variance_vacuum_any_angle") {
  const WignerGrid vac = wigner_exact(CavityState::fock(0, 2), kDefaultGrid);
  for (double angle : {0.0, 0.4, kPi / 2, 2.0}) {
    CHECK(std::abs(quadrature_variance(vac, angle) - 0.25) <= 0.005);
  }
}

TEST_CASE("quadrature_variance_gaussian_squeezed_state") {
  // A large cutoff leaves an essentially Gaussian state, so fit and moment coincide.
  const WignerGrid w = wigner_exact(squeezed_state(0.8, 0.0, 30, 32), GridGeometry::square(4.0, 0.1));
  CHECK(std::abs(quadrature_variance(w, 0.0) - std::exp(-1.6) / 4.0) <= 0.003);
  CHECK(std::abs(quadrature_variance(w, kPi / 2) - std::exp(1.6) / 4.0) <= 0.05 * std::exp(1.6) / 4.0);
}

TEST_CASE("quadrature_variance_anti_squeezed_cutoff8") {
  const WignerGrid w = wigner_exact(squeezed_state(0.8, 0.0, 8, 10), GridGeometry::square(4.0, 0.1));
  const double v = quadrature_variance(w, kPi / 2);
  CHECK(std::abs(v - std::exp(1.6) / 4.0) <= 0.05 * std::exp(1.6) / 4.0);
  CHECK(v > 1.0);
}

TEST_CASE("quadrature_minimum_at_half_squeezing_angle") {
  for (int step : {0, 4, 8}) {
    const double theta = 2.0 * step * kPi / 16.0;
    const WignerGrid w = wigner_exact(squeezed_state(0.8, theta, 8, 10), GridGeometry::square(4.0, 0.1));
    int best = -1;
    double best_v = 1e9;
    for (int k = 0; k < 16; ++k) {
      const double v = quadrature_variance(w, k * kPi / 16.0);
      if (v < best_v) {
        best_v = v;
        best = k;
      }
    }
    CHECK(best == step);
  }
}

TEST_CASE("quadrature_fit_rejects_small_grid") {
  const WignerGrid w = wigner_exact(CavityState::fock(0, 2), GridGeometry::square(2.0, 0.1));
  CHECK_THROWS_AS(quadrature_variance(w, 0.0), Error);
}

TEST_CASE("bilinear_sampling_and_coverage") {
  const WignerGrid w = wigner_exact(CavityState::fock(0, 2), GridGeometry::square(1.0, 0.5));
  CHECK(sample_bilinear(w, 0.0, 0.0) == doctest::Approx(w.values(2, 2)));
  CHECK(sample_bilinear(w, 0.25, 0.0) == doctest::Approx(0.5 * (w.values(2, 2) + w.values(3, 2))));
  CHECK(sample_bilinear(w, 5.0, 0.0) == 0.0);
  CHECK(grid_covers(GridGeometry::square(3.5, 0.1), CavityState::fock(0, 2)));
  CHECK_FALSE(grid_covers(GridGeometry::square(3.5, 0.1), CavityState::fock(8, 10)));
}
