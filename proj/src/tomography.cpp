#include "fockconv/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <unsupported/Eigen/NonLinearOptimization>

#include "fockconv/error.hpp"

namespace fockconv {

namespace {

int axis_count(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::InvalidArgument, "grid axis needs finite bounds and positive spacing");
  }
  return static_cast<int>(std::llround((hi - lo) / step)) + 1;
}

std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Trapezoid weights along one axis.
Eigen::VectorXd trapezoid_weights(int count, double step) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(count, step);
  if (count > 1) {
    w(0) *= 0.5;
    w(count - 1) *= 0.5;
  }
  return w;
}

// Real parametrization of a Hermitian matrix: diagonal first, then
// (Re, Im) of each upper-triangle element in row order.
int hermitian_params(int dim) { return dim * dim; }

Eigen::VectorXd to_params(const CMatrix& rho) {
  const int dim = static_cast<int>(rho.rows());
  Eigen::VectorXd v(hermitian_params(dim));
  int k = 0;
  for (int m = 0; m < dim; ++m) v(k++) = rho(m, m).real();
  for (int m = 0; m < dim; ++m) {
    for (int n = m + 1; n < dim; ++n) {
      v(k++) = rho(m, n).real();
      v(k++) = rho(m, n).imag();
    }
  }
  return v;
}

CMatrix from_params(const Eigen::VectorXd& v, int dim) {
  CMatrix rho = CMatrix::Zero(dim, dim);
  int k = 0;
  for (int m = 0; m < dim; ++m) rho(m, m) = v(k++);
  for (int m = 0; m < dim; ++m) {
    for (int n = m + 1; n < dim; ++n) {
      const complex z(v(k), v(k + 1));
      k += 2;
      rho(m, n) = z;
      rho(n, m) = std::conj(z);
    }
  }
  return rho;
}

// Linear map from Hermitian-rho parameters to grid values.
class WignerDesign {
 public:
  WignerDesign(const GridGeometry& geometry, int dim) : dim_(dim) {
    const int nx = geometry.nx();
    const int np = geometry.np();
    const long pixels = static_cast<long>(nx) * np;
    if (pixels < static_cast<long>(dim) * dim) {
      throw Error(ErrorKind::UnderdeterminedGrid,
                  std::to_string(pixels) + " pixels cannot determine a " + std::to_string(dim) +
                      "x" + std::to_string(dim) + " density matrix");
    }
    design_.resize(pixels, hermitian_params(dim));
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < np; ++j) {
        const CMatrix kernel = displaced_parity_kernel({geometry.x(i), geometry.p(j)}, dim);
        const long row = static_cast<long>(i) * np + j;
        int k = 0;
        for (int m = 0; m < dim; ++m) design_(row, k++) = kWignerPeak * kernel(m, m).real();
        for (int m = 0; m < dim; ++m) {
          for (int n = m + 1; n < dim; ++n) {
            design_(row, k++) = 2.0 * kWignerPeak * kernel(n, m).real();
            design_(row, k++) = -2.0 * kWignerPeak * kernel(n, m).imag();
          }
        }
      }
    }
    qr_.compute(design_);
    qr_.setThreshold(1e-10);
    if (qr_.rank() < design_.cols()) {
      throw Error(ErrorKind::SingularDesign,
                  "measurement map has rank " + std::to_string(qr_.rank()) + " < " +
                      std::to_string(design_.cols()) + "; widen or refine the grid");
    }
  }

  CMatrix solve(const Eigen::VectorXd& data) const { return from_params(qr_.solve(data), dim_); }
  Eigen::VectorXd forward(const CMatrix& rho) const { return design_ * to_params(rho); }

 private:
  int dim_;
  Eigen::MatrixXd design_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

Eigen::VectorXd flatten(const Eigen::MatrixXd& values) {
  // values(i, j) row-major: x outer, p inner.
  Eigen::VectorXd v(values.size());
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) v(i * values.cols() + j) = values(i, j);
  }
  return v;
}

Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, int nx, int np) {
  Eigen::MatrixXd values(nx, np);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) values(i, j) = v(static_cast<long>(i) * np + j);
  }
  return values;
}

DensityMatrix solve_and_project(const WignerDesign& design, const WignerGrid& grid,
                                bool normalize_by_r) {
  Eigen::VectorXd data = flatten(grid.values);
  if (normalize_by_r) {
    const double r = reduction_factor(grid);
    if (!(r > 0.0)) {
      throw Error(ErrorKind::InvalidR,
                  "cannot normalize by nonpositive reduction factor " + std::to_string(r));
    }
    data /= r;
  }
  return DensityMatrix(project_to_density(design.solve(data)));
}

Estimate summarize(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

// Residuals of A exp(-(u - mu)^2 / (2 s^2)) against the marginal; x = (A, mu, s).
struct GaussianResidual {
  const std::vector<double>& u;
  const std::vector<double>& y;

  int inputs() const { return 3; }
  int values() const { return static_cast<int>(u.size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double z = (u[k] - x(1)) / x(2);
      f(static_cast<Eigen::Index>(k)) = x(0) * std::exp(-0.5 * z * z) - y[k];
    }
    return 0;
  }

  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double z = (u[k] - x(1)) / x(2);
      const double g = std::exp(-0.5 * z * z);
      const auto row = static_cast<Eigen::Index>(k);
      jac(row, 0) = g;
      jac(row, 1) = x(0) * g * z / x(2);
      jac(row, 2) = x(0) * g * z * z / x(2);
    }
    return 0;
  }
};

}  // namespace

GridGeometry GridGeometry::square(double extent, double spacing) {
  return {-extent, extent, spacing, -extent, extent, spacing};
}

int GridGeometry::nx() const { return axis_count(x_min, x_max, dx); }
int GridGeometry::np() const { return axis_count(p_min, p_max, dp); }

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::InvalidArgument, "density matrix must be square and nonempty");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(entries_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorKind::InvalidArgument, "density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const CavityState& state) {
  const CVector& psi = state.amplitudes();
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

CMatrix displaced_parity_kernel(complex beta, int dim) {
  CMatrix k(dim, dim);
  const complex shift = -2.0 * beta;
  for (int m = 0; m < dim; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for (int n = m; n < dim; ++n) {
      k(m, n) = sign * displacement_element(shift, m, n);
      k(n, m) = std::conj(k(m, n));
    }
  }
  return k;
}

WignerGrid wigner_exact(const DensityMatrix& rho, const GridGeometry& geometry) {
  const int nx = geometry.nx();
  const int np = geometry.np();
  WignerGrid grid{geometry, Eigen::MatrixXd(nx, np), GridKind::Exact};
  const CMatrix& r = rho.entries();
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) {
      const CMatrix k = displaced_parity_kernel({geometry.x(i), geometry.p(j)}, rho.dim());
      grid.values(i, j) = kWignerPeak * (r.cwiseProduct(k.transpose())).sum().real();
    }
  }
  return grid;
}

WignerGrid wigner_exact(const CavityState& state, const GridGeometry& geometry) {
  const int nx = geometry.nx();
  const int np = geometry.np();
  WignerGrid grid{geometry, Eigen::MatrixXd(nx, np), GridKind::Exact};
  const CVector& psi = state.amplitudes();
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) {
      const CMatrix k = displaced_parity_kernel({geometry.x(i), geometry.p(j)}, state.dim());
      grid.values(i, j) = kWignerPeak * psi.dot(k * psi).real();
    }
  }
  return grid;
}

WignerGrid simulate_measurement(const WignerGrid& exact, double reduction, double noise_sigma,
                                std::uint64_t seed) {
  if (exact.kind != GridKind::Exact) {
    throw Error(ErrorKind::InvalidArgument, "measurement simulation expects an exact grid");
  }
  if (!(reduction > 0.0 && reduction <= 1.0)) {
    throw Error(ErrorKind::InvalidR, "reduction factor must lie in (0, 1], got " +
                                         std::to_string(reduction));
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorKind::InvalidArgument, "noise sigma must be finite and >= 0");
  }
  WignerGrid out = exact;
  out.kind = GridKind::Measured;
  out.values *= reduction;
  if (noise_sigma > 0.0) {
    const Eigen::Index np = out.values.cols();
    for (Eigen::Index i = 0; i < out.values.rows(); ++i) {
      for (Eigen::Index j = 0; j < np; ++j) {
        auto rng = stream_for(seed, static_cast<std::uint64_t>(i * np + j));
        std::normal_distribution<double> noise(0.0, noise_sigma);
        out.values(i, j) += noise(rng);
      }
    }
  }
  return out;
}

double reduction_factor(const WignerGrid& grid) {
  const Eigen::VectorXd wx = trapezoid_weights(static_cast<int>(grid.values.rows()), grid.geometry.dx);
  const Eigen::VectorXd wp = trapezoid_weights(static_cast<int>(grid.values.cols()), grid.geometry.dp);
  return wx.dot(grid.values * wp);
}

CMatrix project_to_density(const CMatrix& hermitian) {
  const CMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  const double trace = h.trace().real();
  if (!(trace > 0.0)) {
    throw Error(ErrorKind::SingularDesign,
                "least-squares estimate has nonpositive trace " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h / trace);
  // Eigen sorts ascending; walk from the most negative eigenvalue upward.
  Eigen::VectorXd lambda = eig.eigenvalues();
  const int dim = static_cast<int>(lambda.size());
  double carried = 0.0;
  int first_kept = 0;
  while (first_kept < dim) {
    const int remaining = dim - first_kept;
    if (lambda(first_kept) + carried / remaining >= 0.0) break;
    carried += lambda(first_kept);
    lambda(first_kept) = 0.0;
    ++first_kept;
  }
  const int remaining = dim - first_kept;
  for (int k = first_kept; k < dim; ++k) lambda(k) += carried / remaining;
  const CMatrix& v = eig.eigenvectors();
  CMatrix rho = v * lambda.cast<complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

DensityMatrix reconstruct_density_matrix(const WignerGrid& measured, int dim, bool normalize_by_r) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  const WignerDesign design(measured.geometry, dim);
  return solve_and_project(design, measured, normalize_by_r);
}

double fidelity(const DensityMatrix& rho, const CavityState& target) {
  if (rho.dim() != target.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "density matrix dim " + std::to_string(rho.dim()) + " vs target dim " +
                    std::to_string(target.dim()));
  }
  const CVector& psi = target.amplitudes();
  const double f = psi.dot(rho.entries() * psi).real();
  return std::clamp(f, 0.0, 1.0);
}

BootstrapSummary bootstrap_statistics(const WignerGrid& measured, const CavityState& target,
                                      int dim, int resamples, std::uint64_t seed) {
  if (resamples < 50) {
    throw Error(ErrorKind::TooFewResamples,
                "bootstrap needs >= 50 resamples, got " + std::to_string(resamples));
  }
  const WignerDesign design(measured.geometry, dim);
  const DensityMatrix rho_hat = solve_and_project(design, measured, true);
  const double r_hat = reduction_factor(measured);
  const Eigen::VectorXd prediction = r_hat * design.forward(rho_hat.entries());
  const Eigen::VectorXd residual = flatten(measured.values) - prediction;
  const int nx = static_cast<int>(measured.values.rows());
  const int np = static_cast<int>(measured.values.cols());
  const auto pixels = static_cast<std::uint64_t>(residual.size());

  std::vector<double> rs(resamples);
  std::vector<double> fs(resamples);
  for (int b = 0; b < resamples; ++b) {
    auto rng = stream_for(seed, static_cast<std::uint64_t>(b));
    std::uniform_int_distribution<std::uint64_t> pick(0, pixels - 1);
    Eigen::VectorXd data = prediction;
    for (Eigen::Index k = 0; k < data.size(); ++k) {
      data(k) += residual(static_cast<Eigen::Index>(pick(rng)));
    }
    WignerGrid resampled{measured.geometry, unflatten(data, nx, np), GridKind::Measured};
    rs[b] = reduction_factor(resampled);
    fs[b] = fidelity(solve_and_project(design, resampled, true), target);
  }
  return {summarize(rs), summarize(fs), resamples};
}

double sample_bilinear(const WignerGrid& grid, double x, double p) {
  const GridGeometry& g = grid.geometry;
  const double fx = (x - g.x_min) / g.dx;
  const double fp = (p - g.p_min) / g.dp;
  const auto last_x = static_cast<double>(grid.values.rows() - 1);
  const auto last_p = static_cast<double>(grid.values.cols() - 1);
  const double eps = 1e-9;
  if (fx < -eps || fp < -eps || fx > last_x + eps || fp > last_p + eps) return 0.0;
  const double cx = std::clamp(fx, 0.0, last_x);
  const double cp = std::clamp(fp, 0.0, last_p);
  auto i = static_cast<Eigen::Index>(std::min(std::floor(cx), std::max(last_x - 1.0, 0.0)));
  auto j = static_cast<Eigen::Index>(std::min(std::floor(cp), std::max(last_p - 1.0, 0.0)));
  const double tx = grid.values.rows() > 1 ? cx - static_cast<double>(i) : 0.0;
  const double tp = grid.values.cols() > 1 ? cp - static_cast<double>(j) : 0.0;
  const Eigen::Index i1 = std::min<Eigen::Index>(i + 1, grid.values.rows() - 1);
  const Eigen::Index j1 = std::min<Eigen::Index>(j + 1, grid.values.cols() - 1);
  return (1 - tx) * (1 - tp) * grid.values(i, j) + tx * (1 - tp) * grid.values(i1, j) +
         (1 - tx) * tp * grid.values(i, j1) + tx * tp * grid.values(i1, j1);
}

QuadratureFit fit_quadrature(const WignerGrid& grid, double angle) {
  const GridGeometry& g = grid.geometry;
  const double half = std::min({-g.x_min, g.x_max, -g.p_min, g.p_max});
  if (!(half >= 3.0 - 1e-9)) {
    throw Error(ErrorKind::InvalidArgument,
                "quadrature analysis needs the grid to cover at least +-3");
  }
  const double step = std::min(g.dx, g.dp);
  const int count = 2 * static_cast<int>(std::floor(half / step + 1e-9)) + 1;
  const double start = -step * (count - 1) / 2;
  const double c = std::cos(angle);
  const double s = std::sin(angle);

  QuadratureFit fit;
  fit.axis.resize(count);
  fit.marginal.assign(count, 0.0);
  const Eigen::VectorXd w = trapezoid_weights(count, step);
  long outside = 0;
  for (int a = 0; a < count; ++a) {
    const double u = start + a * step;
    fit.axis[a] = u;
    double sum = 0.0;
    for (int b = 0; b < count; ++b) {
      const double v = start + b * step;
      const double x = u * c - v * s;
      const double p = u * s + v * c;
      if (x < g.x_min - 1e-9 || x > g.x_max + 1e-9 || p < g.p_min - 1e-9 || p > g.p_max + 1e-9) {
        ++outside;
        continue;
      }
      sum += w(b) * sample_bilinear(grid, x, p);
    }
    fit.marginal[a] = sum;
  }
  fit.uncovered_fraction = static_cast<double>(outside) / (static_cast<double>(count) * count);

  // Starting point from moments.
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (int a = 0; a < count; ++a) {
    m0 += w(a) * fit.marginal[a];
    m1 += w(a) * fit.marginal[a] * fit.axis[a];
    m2 += w(a) * fit.marginal[a] * fit.axis[a] * fit.axis[a];
  }
  double mu0 = m0 != 0.0 ? m1 / m0 : 0.0;
  double var0 = m0 != 0.0 ? m2 / m0 - mu0 * mu0 : 0.25;
  if (!(var0 > 0.0) || !std::isfinite(var0)) var0 = 0.25;
  const double peak = *std::max_element(fit.marginal.begin(), fit.marginal.end());

  GaussianResidual residual{fit.axis, fit.marginal};
  Eigen::VectorXd x(3);
  x << peak, mu0, std::sqrt(var0);
  Eigen::LevenbergMarquardt<GaussianResidual> lm(residual);
  lm.parameters.xtol = 1e-12;
  lm.parameters.ftol = 1e-12;
  lm.parameters.maxfev = 2000;
  const auto info = lm.minimize(x);
  const bool converged = info == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                         info == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                         info == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                         info == Eigen::LevenbergMarquardtSpace::CosinusTooSmall;
  const double variance = x(2) * x(2);
  if (!converged || !std::isfinite(variance) || !(variance > 0.0) || !(x(0) > 0.0)) {
    throw Error(ErrorKind::FitDiverged, "Gaussian fit of the quadrature marginal did not converge");
  }
  fit.amplitude = x(0);
  fit.mean = x(1);
  fit.variance = variance;
  return fit;
}

double quadrature_variance(const WignerGrid& grid, double angle) {
  return fit_quadrature(grid, angle).variance;
}

bool grid_covers(const GridGeometry& geometry, const CavityState& state) {
  const double needed = 3.0 + std::sqrt(std::max(0, state.support_max()));
  return -geometry.x_min >= needed && geometry.x_max >= needed && -geometry.p_min >= needed &&
         geometry.p_max >= needed;
}

}  // namespace fockconv
