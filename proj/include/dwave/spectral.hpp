#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "dwave/operator.hpp"

namespace dwave {

/// Largest generator dimension accepted by the dense routines.
inline constexpr int kSpectrumCap = 4000;

/// All eigenvalues of A (LAPACK dgeev on the energy-similar form), sorted by
/// imaginary part, then real part. Throws CapacityError above kSpectrumCap.
std::vector<std::complex<double>> spectrum(const GeneratorMatrix& g);

/// max Re over the eigenvalues; ContractError when empty.
double spectral_abscissa(const std::vector<std::complex<double>>& eigs);

/// Header re,im.
std::string spectrum_csv(const std::vector<std::complex<double>>& eigs);

/// Energy-norm resolvent ||(i lambda - A)^{-1}||_W, evaluated as the inverse
/// of the smallest singular value of i lambda - R A R^{-1} (W = R^T R). The
/// similar matrix is built once; norm() is safe to call concurrently.
class ResolventEvaluator {
 public:
  explicit ResolventEvaluator(const GeneratorMatrix& g);
  /// +infinity when the shift is numerically singular
  /// (sigma_min <= 1000 eps sigma_max).
  double norm(double lambda) const;
  const Eigen::MatrixXd& similar_generator() const { return aw_; }

 private:
  Eigen::MatrixXd aw_;
};

/// Single evaluation (builds the similar matrix each call).
double resolvent_norm(const GeneratorMatrix& g, double lambda);

struct ResolventScan {
  std::vector<double> lambdas;
  std::vector<double> norms;
  double sup_norm = 0.0;
  /// max over lambda != 0 of norm * lambda^2 / (1 + lambda^2), the smallest
  /// kappa with norm <= kappa (1 + 1/lambda^2) on the grid.
  double bound_kappa = 0.0;
  std::string tag;

  bool finite() const;
  /// Header lambda,resolvent_norm.
  std::string to_csv() const;
};

/// Evaluates the grid on `threads` workers (0 = hardware concurrency);
/// results are stored in grid order. Grid must be nonempty and sorted.
ResolventScan scan(const GeneratorMatrix& g, const std::vector<double>& grid,
                   int threads = 0);

/// n points from lo to hi, equally spaced in log10 (endpoints exact).
std::vector<double> logspace(double lo, double hi, int n);

}  // namespace dwave
