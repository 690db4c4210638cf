#include "spheredpp/likelihood.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "spheredpp/errors.hpp"
#include "spheredpp/harmonics.hpp"

namespace spheredpp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log det via LDLT; -inf on a non-positive pivot
double log_det_spd(const Eigen::MatrixXd& K) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
  if (ldlt.info() != Eigen::Success) return kNegInf;
  const auto D = ldlt.vectorD();
  double s = 0.0;
  for (Eigen::Index i = 0; i < D.size(); ++i) {
    if (!(D[i] > 0.0)) return kNegInf;
    s += std::log(D[i]);
  }
  return s;
}

Eigen::MatrixXd radial_matrix(const PointPattern& p, const std::function<double(double)>& f) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd K(n, n);
  const double diag = f(0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = diag;
    for (Eigen::Index j = 0; j < i; ++j) K(i, j) = K(j, i) = f(geodesic_distance(p[i], p[j]));
  }
  return K;
}

} // namespace

DensityContext::DensityContext(const MercerSpectrum& density_kernel) : spectrum_(density_kernel) {
  if (spectrum_.kind() != SpectrumKind::DensityKernel)
    throw DomainError("DensityContext needs a density-kernel spectrum");
  const double sigma = surface_measure(spectrum_.dim());
  weights_.resize(spectrum_.size());
  for (int l = 0; l <= spectrum_.max_level(); ++l) {
    const double m = multiplicity_real(l, spectrum_.dim());
    D_ += m * std::log1p(spectrum_[l]);
    weights_[l] = m * spectrum_[l] / sigma;
  }
}

DensityContext DensityContext::from_kernel(const MercerSpectrum& kernel) {
  return DensityContext(to_density_kernel(kernel));
}

double DensityContext::c0(double s) const {
  return eval_gegenbauer_series(spectrum_.dim(), weights_, s);
}

double log_density(const PointPattern& pattern, const DensityContext& ctx) {
  if (pattern.dim() != ctx.dim()) throw DimensionError("pattern dimension does not match");
  const double base = surface_measure(ctx.dim()) - ctx.D();
  if (pattern.empty()) return base;
  return base + log_det_spd(radial_matrix(pattern, [&](double s) { return ctx.c0(s); }));
}

ScaledFitSpec scaled_fit_spec(const Family& family, Dimension dim, const TruncationPolicy& trunc) {
  ScaledFitSpec spec;
  spec.dim = dim;
  spec.alpha = correlation_spectrum(model_dschoenberg(family, dim, trunc)).values();
  spec.psi = psi_function(family);
  return spec;
}

double log_det_psi(const PointPattern& pattern, const std::function<double(double)>& psi) {
  if (pattern.empty()) return 0.0;
  return log_det_spd(radial_matrix(pattern, psi));
}

LoglikValue loglik_score_info(std::size_t n, double logdet, const ScaledFitSpec& spec,
                              double zeta) {
  if (n == 0) throw DomainError("log-likelihood needs a nonempty pattern");
  const double chi = std::exp(zeta);
  double penalty = 0.0, mass = 0.0, info = 0.0;
  for (std::size_t l = 0; l < spec.alpha.size(); ++l) {
    const double a = spec.alpha[l];
    if (a == 0.0) continue;
    const double m = multiplicity_real(static_cast<int>(l), spec.dim);
    const double ac = a * chi;
    const double r = ac / (1.0 + ac);
    penalty += m * std::log1p(ac);
    mass += m * r;
    info += m * r / (1.0 + ac);
  }
  return {static_cast<double>(n) * zeta + logdet - penalty, static_cast<double>(n) - mass, info};
}

LoglikValue loglik_score_info(const PointPattern& pattern, const ScaledFitSpec& spec,
                              double zeta) {
  if (pattern.dim() != spec.dim) throw DimensionError("pattern dimension does not match");
  return loglik_score_info(pattern.size(), log_det_psi(pattern, spec.psi), spec, zeta);
}

MleResult newton_mle(const PointPattern& pattern, const ScaledFitSpec& spec,
                     const MleOptions& opt) {
  const std::size_t n = pattern.size();
  if (n == 0) throw DomainError("MLE needs a nonempty pattern");
  if (pattern.dim() != spec.dim) throw DimensionError("pattern dimension does not match");
  double total_m = 0.0, total_ma = 0.0;
  for (std::size_t l = 0; l < spec.alpha.size(); ++l) {
    if (spec.alpha[l] <= 0.0) continue;
    const double m = multiplicity_real(static_cast<int>(l), spec.dim);
    total_m += m;
    total_ma += m * spec.alpha[l];
  }
  if (!(static_cast<double>(n) < total_m))
    throw DomainError("MLE needs n < " + std::to_string(total_m) +
                      " (sum of multiplicities of the represented levels); the score has no root");

  const double logdet = log_det_psi(pattern, spec.psi);
  auto eval = [&](double z) { return loglik_score_info(n, logdet, spec, z); };

  double z = opt.zeta0.value_or(std::log(static_cast<double>(n) / total_ma));
  LoglikValue cur = eval(z);
  // sign bracket on the decreasing score
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  MleResult res;
  for (int it = 1; it <= opt.max_iter; ++it) {
    if (cur.score > 0.0) lo = std::max(lo, z);
    else hi = std::min(hi, z);
    double step = cur.score / cur.information;
    double cand = z + step;
    if (!(cand > lo && cand < hi) && std::isfinite(lo) && std::isfinite(hi)) cand = 0.5 * (lo + hi);
    LoglikValue next = eval(cand);
    // halve while the likelihood goes down (concave in zeta, so this terminates)
    for (int h = 0; h < 60 && next.loglik < cur.loglik - 1e-12 * std::fabs(cur.loglik); ++h) {
      step = 0.5 * (cand - z);
      cand = z + step;
      next = eval(cand);
    }
    z = cand;
    cur = next;
    res.iterations = it;
    if (std::fabs(cur.score) < opt.tol) {
      res.converged = true;
      break;
    }
  }
  res.zeta = z;
  res.chi = std::exp(z);
  res.loglik = cur.loglik;
  res.score = cur.score;
  res.information = cur.information;
  if (!res.converged)
    throw ConvergenceError("Newton-Raphson did not reach |score| < tol in " +
                           std::to_string(opt.max_iter) + " iterations");
  return res;
}

} // namespace spheredpp
