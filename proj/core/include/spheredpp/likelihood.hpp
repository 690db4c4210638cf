#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "spheredpp/models.hpp"
#include "spheredpp/sphere.hpp"
#include "spheredpp/spectra.hpp"

namespace spheredpp {

/// Everything needed to evaluate the density with respect to the unit-rate
/// Poisson process.
class DensityContext {
public:
  /// From a density-kernel spectrum (lambda~).
  explicit DensityContext(const MercerSpectrum& density_kernel);
  /// From a kernel spectrum; every lambda must be < 1.
  static DensityContext from_kernel(const MercerSpectrum& kernel);

  Dimension dim() const noexcept { return spectrum_.dim(); }
  const MercerSpectrum& spectrum() const noexcept { return spectrum_; }
  /// D = sum_l m_l log(1 + lambda~_l).
  double D() const noexcept { return D_; }
  /// Radial part of the density kernel.
  double c0(double s) const;

private:
  MercerSpectrum spectrum_;
  double D_ = 0.0;
  std::vector<double> weights_;
};

/// log f = sigma_d - D + log det[C~0(s(x_i, x_j))]; -inf when the matrix is
/// not positive definite.
double log_density(const PointPattern& pattern, const DensityContext& ctx);

/// Base correlation shape for fitting the density-kernel scale chi.
struct ScaledFitSpec {
  Dimension dim{2};
  /// Correlation Mercer coefficients alpha_l.
  std::vector<double> alpha;
  std::function<double(double)> psi;
};

ScaledFitSpec scaled_fit_spec(const Family& family, Dimension dim,
                              const TruncationPolicy& trunc = {});

/// log det[psi(s(x_i, x_j))], -inf when not positive definite.
double log_det_psi(const PointPattern& pattern, const std::function<double(double)>& psi);

struct LoglikValue {
  double loglik;
  double score;
  double information;
};

/// Log-likelihood in zeta = log chi, its derivative and minus its second derivative.
LoglikValue loglik_score_info(const PointPattern& pattern, const ScaledFitSpec& spec,
                              double zeta);

/// Same with log det psi and n supplied.
LoglikValue loglik_score_info(std::size_t n, double logdet, const ScaledFitSpec& spec,
                              double zeta);

struct MleOptions {
  double tol = 1e-10;
  int max_iter = 100;
  /// Default start: log(n / sum_l m_l alpha_l).
  std::optional<double> zeta0;
};

struct MleResult {
  double chi = 0.0;
  double zeta = 0.0;
  double loglik = 0.0;
  double score = 0.0;
  double information = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Newton-Raphson in zeta with step halving and a sign bracket on the score.
/// Throws DomainError when n = 0 or n >= sum of multiplicities with alpha > 0,
/// ConvergenceError when max_iter is exhausted.
MleResult newton_mle(const PointPattern& pattern, const ScaledFitSpec& spec,
                     const MleOptions& opt = {});

} // namespace spheredpp
