#include "spheredpp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "spheredpp/errors.hpp"
#include "spheredpp/harmonics.hpp"

namespace spheredpp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_entries(const std::vector<double>& v, const char* what) {
  for (std::size_t l = 0; l < v.size(); ++l)
    if (!(v[l] >= 0.0) || !std::isfinite(v[l]))
      throw DomainError(std::string(what) + ": entry " + std::to_string(l) +
                        " is negative or not finite");
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double log_gamma_nn(int n, int d) {
  if (d == 1) return n == 0 ? 0.0 : std::log(2.0) - n * std::log(2.0);
  const double h = 0.5 * (d - 1);
  // (2n+d-1) n! Gamma((d-1)/2) / (2^{n+1} Gamma((2n+d+1)/2)) binom(n+d-2, n)
  return std::log(2.0 * n + d - 1.0) + std::lgamma(n + 1.0) + std::lgamma(h) -
         (n + 1.0) * std::log(2.0) - std::lgamma(n + h + 1.0) + std::lgamma(n + d - 1.0) -
         std::lgamma(n + 1.0) - std::lgamma(d - 1.0);
}

} // namespace

SchoenbergSeq::SchoenbergSeq(std::vector<double> beta, double tail_bound)
    : beta_(std::move(beta)), tail_(tail_bound) {
  check_entries(beta_, "Schoenberg sequence");
  if (!(tail_ >= 0.0)) throw DomainError("tail bound must be >= 0");
}

double SchoenbergSeq::mass() const { return sum(beta_); }

DSchoenbergSeq::DSchoenbergSeq(Dimension dim, std::vector<double> beta, double tail_bound)
    : dim_(dim), beta_(std::move(beta)), tail_(tail_bound) {
  check_entries(beta_, "d-Schoenberg sequence");
  if (!(tail_ >= 0.0)) throw DomainError("tail bound must be >= 0");
  if (mass() + tail_ > 1.0 + 1e-9)
    throw DomainError("d-Schoenberg mass plus tail exceeds 1");
}

double DSchoenbergSeq::mass() const { return sum(beta_); }

std::string_view to_string(SpectrumKind kind) {
  switch (kind) {
  case SpectrumKind::Correlation: return "correlation";
  case SpectrumKind::Kernel: return "kernel";
  case SpectrumKind::DensityKernel: return "density_kernel";
  }
  return "?";
}

SpectrumKind spectrum_kind_from_string(std::string_view s) {
  if (s == "correlation") return SpectrumKind::Correlation;
  if (s == "kernel") return SpectrumKind::Kernel;
  if (s == "density_kernel") return SpectrumKind::DensityKernel;
  throw DomainError("unknown spectrum kind '" + std::string(s) + "'");
}

MercerSpectrum::MercerSpectrum(Dimension dim, SpectrumKind kind, std::vector<double> values,
                               double tail_bound)
    : dim_(dim), kind_(kind), values_(std::move(values)), tail_(tail_bound) {
  check_entries(values_, "Mercer spectrum");
  if (!(tail_ >= 0.0)) throw DomainError("tail bound must be >= 0");
  if (kind_ == SpectrumKind::Kernel) {
    for (std::size_t l = 0; l < values_.size(); ++l)
      if (values_[l] > 1.0 + 1e-12)
        throw ExistenceError("kernel eigenvalue " + std::to_string(values_[l]) + " at level " +
                             std::to_string(l) + " exceeds 1");
  }
}

double MercerSpectrum::trace() const {
  double t = 0.0;
  for (std::size_t l = 0; l < values_.size(); ++l)
    if (values_[l] != 0.0) t += multiplicity_real(static_cast<int>(l), dim_) * values_[l];
  return t;
}

double MercerSpectrum::eta() const {
  if (kind_ != SpectrumKind::Kernel) throw DomainError("eta is defined for kernel spectra");
  return trace();
}

double schoenberg_gamma(int n, int l, Dimension dim) {
  if (n < 0 || l < n || (l - n) % 2 != 0) return 0.0;
  const int d = dim.value();
  if (d == 1) {
    const double two = (n == 0) ? 1.0 : 2.0;
    const int j = (l - n) / 2;
    return two * std::exp(-l * std::log(2.0) + std::lgamma(l + 1.0) - std::lgamma(j + 1.0) -
                          std::lgamma(l - j + 1.0));
  }
  const double h = 0.5 * (d - 1);
  const double lg = std::log(2.0 * n + d - 1.0) + std::lgamma(l + 1.0) + std::lgamma(h) -
                    (l + 1.0) * std::log(2.0) - std::lgamma(0.5 * (l - n) + 1.0) -
                    std::lgamma(0.5 * (l + n + d + 1)) + std::lgamma(n + d - 1.0) -
                    std::lgamma(n + 1.0) - std::lgamma(d - 1.0);
  return std::exp(lg);
}

DSchoenbergSeq schoenberg_to_d(const SchoenbergSeq& beta, Dimension dim, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const int d = dim.value();
  const int L = static_cast<int>(beta.size()) - 1;
  const int top = std::min(n_max, std::max(L, 0));
  const double total = beta.mass();
  std::vector<double> out(L < 0 ? 0 : top + 1, 0.0);
  double acc = 0.0;
  for (int n = 0; n <= top && L >= 0; ++n) {
    double lg = log_gamma_nn(n, d);
    double s = 0.0;
    for (int l = n; l <= L; l += 2) {
      if (beta[l] > 0.0) s += std::exp(lg + std::log(beta[l]));
      // gamma_{n,l+2} / gamma_{n,l}
      lg += std::log((l + 1.0) * (l + 2.0)) - std::log((l - n + 2.0) * (l + n + d + 1.0));
    }
    out[n] = s;
    acc += s;
    if (acc >= total * (1.0 - 1e-16) && n >= 1) {
      out.resize(n + 1);
      break;
    }
  }
  const double pushed = std::max(0.0, total - acc);
  return DSchoenbergSeq(dim, std::move(out), beta.tail_bound() + pushed);
}

std::vector<double> d_schoenberg_integrals(const std::function<double(double)>& psi,
                                           Dimension dim, int n_max, const QuadSpec& quad) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const int d = dim.value();
  const std::size_t m = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> scale(m);
  if (d == 1) {
    scale[0] = 1.0 / kPi;
    for (std::size_t l = 1; l < m; ++l) scale[l] = 2.0 / kPi;
  } else {
    const double h = 0.5 * (d - 1);
    // (2l+d-1)/(2^{3-d} pi) Gamma(h)^2/Gamma(d-1) C_l(1), C_l(1) = binom(l+d-2, l)
    const double base = (d - 3.0) * std::log(2.0) - std::log(kPi) + 2.0 * std::lgamma(h) -
                        std::lgamma(d - 1.0);
    for (std::size_t l = 0; l < m; ++l) {
      const double c1 = std::lgamma(l + d - 1.0) - std::lgamma(l + 1.0) - std::lgamma(d - 1.0);
      scale[l] = (2.0 * l + d - 1.0) * std::exp(base + c1);
    }
  }
  const double lam = 0.5 * (d - 1);
  auto f = [&](double s, std::span<double> out) {
    const double w = psi(s) * (d == 1 ? 1.0 : std::pow(std::sin(s), d - 1));
    if (w == 0.0) return;
    if (d == 1) {
      // cos(l s) by the Chebyshev recurrence
      const double c = std::cos(s);
      double t0 = 1.0, t1 = c;
      out[0] = scale[0] * w;
      for (std::size_t l = 1; l < out.size(); ++l) {
        out[l] = scale[l] * w * t1;
        const double t2 = 2.0 * c * t1 - t0;
        t0 = t1;
        t1 = t2;
      }
      return;
    }
    const auto p = gegenbauer_normalized_levels(n_max, lam, std::clamp(std::cos(s), -1.0, 1.0));
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = scale[l] * w * p[l];
  };
  return integrate_vector(f, m, 0.0, kPi, quad).values;
}

DSchoenbergSeq d_schoenberg_from_psi(const std::function<double(double)>& psi, Dimension dim,
                                     int n_max, const QuadSpec& quad) {
  const double p0 = psi(0.0);
  if (!(std::fabs(p0 - 1.0) <= 1e-8))
    throw DomainError("psi(0) must be 1, got " + std::to_string(p0));
  auto beta = d_schoenberg_integrals(psi, dim, n_max, quad);
  for (std::size_t l = 0; l < beta.size(); ++l) {
    if (beta[l] < -1e-8)
      throw DomainError("coefficient " + std::to_string(l) + " = " + std::to_string(beta[l]) +
                        " is negative: psi is not positive definite on this sphere");
    if (beta[l] < 0.0) beta[l] = 0.0;
  }
  // quadrature error keeps the tail from being exactly 0
  const double tail = std::max(1.0 - sum(beta), quad.tol);
  return DSchoenbergSeq(dim, std::move(beta), tail);
}

MercerSpectrum mercer_from_d(const DSchoenbergSeq& beta, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("eta must be positive");
  std::vector<double> lam(beta.size());
  for (std::size_t l = 0; l < beta.size(); ++l) {
    lam[l] = eta * beta[l] / multiplicity_real(static_cast<int>(l), beta.dim());
    if (lam[l] > 1.0 + 1e-12)
      throw ExistenceError("no DPP: eigenvalue " + std::to_string(lam[l]) + " at level " +
                           std::to_string(l) + " exceeds 1 (eta above eta_max)");
  }
  return MercerSpectrum(beta.dim(), SpectrumKind::Kernel, std::move(lam),
                        eta * beta.tail_bound());
}

MercerSpectrum correlation_spectrum(const DSchoenbergSeq& beta) {
  const double sigma = surface_measure(beta.dim());
  std::vector<double> a(beta.size());
  for (std::size_t l = 0; l < beta.size(); ++l)
    a[l] = sigma * beta[l] / multiplicity_real(static_cast<int>(l), beta.dim());
  return MercerSpectrum(beta.dim(), SpectrumKind::Correlation, std::move(a),
                        sigma * beta.tail_bound());
}

RhoMax rho_max(const DSchoenbergSeq& beta, bool psi_nonnegative) {
  const double sigma = surface_measure(beta.dim());
  if (psi_nonnegative) {
    if (!(beta[0] > 0.0)) throw DomainError("rho_max: beta_0 must be positive for psi >= 0");
    return {1.0 / (sigma * beta[0]), false};
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < beta.size(); ++l)
    if (beta[l] > 0.0)
      best = std::min(best, multiplicity_real(static_cast<int>(l), beta.dim()) / (sigma * beta[l]));
  if (!std::isfinite(best)) throw DomainError("rho_max: all coefficients are zero");
  return {best, beta.tail_bound() > 0.0};
}

RhoMax eta_max(const DSchoenbergSeq& beta, bool psi_nonnegative) {
  auto r = rho_max(beta, psi_nonnegative);
  r.value *= surface_measure(beta.dim());
  return r;
}

MercerSpectrum to_density_kernel(const MercerSpectrum& kernel) {
  if (kernel.kind() != SpectrumKind::Kernel) throw DomainError("expected a kernel spectrum");
  std::vector<double> t(kernel.size());
  for (std::size_t l = 0; l < kernel.size(); ++l) {
    const double lam = kernel[l];
    if (lam >= 1.0)
      throw ExistenceError("no density: eigenvalue 1 at level " + std::to_string(l));
    t[l] = lam / (1.0 - lam);
  }
  // every cut-off lambda is at most T = sum of the cut-off m*lambda, so the
  // cut-off lambda~ sum to at most T/(1-T)
  const double tail = kernel.tail_bound();
  const double ttail = tail < 1.0 ? tail / (1.0 - tail) : std::numeric_limits<double>::infinity();
  return MercerSpectrum(kernel.dim(), SpectrumKind::DensityKernel, std::move(t), ttail);
}

MercerSpectrum to_kernel(const MercerSpectrum& density_kernel) {
  if (density_kernel.kind() != SpectrumKind::DensityKernel)
    throw DomainError("expected a density-kernel spectrum");
  std::vector<double> v(density_kernel.size());
  for (std::size_t l = 0; l < density_kernel.size(); ++l)
    v[l] = density_kernel[l] / (1.0 + density_kernel[l]);
  return MercerSpectrum(density_kernel.dim(), SpectrumKind::Kernel, std::move(v),
                        density_kernel.tail_bound());
}

double eval_gegenbauer_series(Dimension dim, std::span<const double> weights, double s) {
  if (weights.empty()) return 0.0;
  const int L = static_cast<int>(weights.size()) - 1;
  const double x = std::clamp(std::cos(s), -1.0, 1.0);
  const auto p = gegenbauer_normalized_levels(L, 0.5 * (dim.value() - 1), x);
  double v = 0.0;
  for (int l = L; l >= 0; --l) v += weights[l] * p[l];
  return v;
}

double eval_psi_series(const DSchoenbergSeq& beta, double s) {
  return eval_gegenbauer_series(beta.dim(), beta.beta(), s);
}

double eval_radial(const MercerSpectrum& spec, double s) {
  const double sigma = surface_measure(spec.dim());
  std::vector<double> w(spec.size());
  for (std::size_t l = 0; l < spec.size(); ++l)
    w[l] = spec[l] == 0.0 ? 0.0
                          : spec[l] * multiplicity_real(static_cast<int>(l), spec.dim()) / sigma;
  return eval_gegenbauer_series(spec.dim(), w, s);
}

DSchoenbergSeq shape_of(const MercerSpectrum& spec) {
  const double total = spec.trace() + spec.tail_bound();
  if (!(total > 0.0)) throw DomainError("shape_of: spectrum has zero trace");
  std::vector<double> b(spec.size());
  for (std::size_t l = 0; l < spec.size(); ++l)
    b[l] = spec[l] == 0.0 ? 0.0
                          : spec[l] * multiplicity_real(static_cast<int>(l), spec.dim()) / total;
  return DSchoenbergSeq(spec.dim(), std::move(b), spec.tail_bound() / total);
}

} // namespace spheredpp
