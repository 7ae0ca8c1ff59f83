#pragma once

// Wigner tomography: forward map, synthetic measurement, reconstruction and
// the derived figures of merit (reduction factor, fidelity, quadrature width).

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fockconv/fock.hpp"

namespace fockconv {

inline constexpr double kWignerPeak = 2.0 / kPi;

/// Uniform rectangular phase-space grid over beta = x + i p.
struct GridGeometry {
  double x_min = -3.5;
  double x_max = 3.5;
  double dx = 0.1;
  double p_min = -3.5;
  double p_max = 3.5;
  double dp = 0.1;

  static GridGeometry square(double extent, double spacing);

  int nx() const;
  int np() const;
  double x(int i) const { return x_min + i * dx; }
  double p(int j) const { return p_min + j * dp; }
};

enum class GridKind { Exact, Measured };

struct WignerGrid {
  GridGeometry geometry;
  Eigen::MatrixXd values;  ///< values(i, j) = W(x_i + i p_j)
  GridKind kind = GridKind::Exact;

  std::size_t pixel_count() const { return static_cast<std::size_t>(values.size()); }
};

/// Hermitian, positive semidefinite, unit-trace D x D matrix.
class DensityMatrix {
 public:
  /// Validates the invariants within 1e-10; throws InvalidArgument otherwise.
  explicit DensityMatrix(CMatrix entries);
  static DensityMatrix pure(const CavityState& state);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const noexcept { return entries_; }
  double purity() const;

 private:
  CMatrix entries_;
};

/// (-1)^m <m|D(-2 beta)|n>, so that W(beta) = (2/pi) Tr[rho K(beta)].
CMatrix displaced_parity_kernel(complex beta, int dim);

WignerGrid wigner_exact(const CavityState& state, const GridGeometry& geometry);
WignerGrid wigner_exact(const DensityMatrix& rho, const GridGeometry& geometry);

/// values <- R values + N(0, noise_sigma) per pixel; each pixel draws from its
/// own stream keyed by (seed, pixel index).
WignerGrid simulate_measurement(const WignerGrid& exact, double reduction, double noise_sigma,
                                std::uint64_t seed);

/// Trapezoidal integral of W over the grid.
double reduction_factor(const WignerGrid& grid);

/// Linear least squares for Hermitian rho followed by projection onto the
/// closest unit-trace PSD matrix (eigenvalue clipping, weight redistributed
/// over the surviving eigenvalues).
DensityMatrix reconstruct_density_matrix(const WignerGrid& measured, int dim,
                                         bool normalize_by_r = true);

/// Projects a Hermitian matrix onto unit-trace PSD matrices.
CMatrix project_to_density(const CMatrix& hermitian);

/// <psi|rho|psi>, clipped to [0, 1].
double fidelity(const DensityMatrix& rho, const CavityState& target);

struct Estimate {
  double mean = 0.0;
  double stddev = 0.0;
};

struct BootstrapSummary {
  Estimate reduction;
  Estimate fidelity;
  int resamples = 0;
};

/// Residual bootstrap: residuals against the forward map of the
/// reconstructed state are resampled with replacement onto every pixel.
BootstrapSummary bootstrap_statistics(const WignerGrid& measured, const CavityState& target,
                                      int dim, int resamples, std::uint64_t seed);

struct QuadratureFit {
  double variance = 0.0;
  double mean = 0.0;
  double amplitude = 0.0;
  std::vector<double> axis;
  std::vector<double> marginal;
  double uncovered_fraction = 0.0;  ///< share of rotated samples outside the grid
};

/// Marginal of X(angle) = x cos(angle) + p sin(angle) with a least-squares
/// Gaussian fit. Throws FitDiverged.
QuadratureFit fit_quadrature(const WignerGrid& grid, double angle);
double quadrature_variance(const WignerGrid& grid, double angle);

/// Bilinear interpolation of the grid; zero outside it.
double sample_bilinear(const WignerGrid& grid, double x, double p);

/// Rule-of-thumb check that the grid reaches 3 + sqrt(N) in every direction.
bool grid_covers(const GridGeometry& geometry, const CavityState& state);

}  // namespace fockconv
