#include "spheredpp/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "spheredpp/errors.hpp"
#include "spheredpp/harmonics.hpp"

namespace spheredpp {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

// --- compact support helpers -------------------------------------------------

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<double> one_minus_pow(int n) {
  std::vector<double> r{1.0};
  for (int i = 0; i < n; ++i) r = poly_mul(r, {1.0, -1.0});
  return r;
}

// psi(u) on [0,1] as polynomial coefficients in u, c = 1
std::vector<double> compact_poly(CompactFamily v) {
  switch (v) {
  case CompactFamily::Askey: return one_minus_pow(3);
  case CompactFamily::C2Wendland: return poly_mul(one_minus_pow(4), {1.0, 4.0});
  case CompactFamily::C4Wendland: return poly_mul(one_minus_pow(6), {1.0, 6.0, 35.0 / 3.0});
  case CompactFamily::Spherical: return poly_mul(one_minus_pow(2), {1.0, 0.5});
  }
  return {};
}

double poly_moment(const std::vector<double>& a, int j) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m += a[i] / (static_cast<double>(i) + j + 1.0);
  return m;
}

// (2/pi) int_0^1 cos(x u) psi(u) du by the power series of cos
double cosine_moment_series(const std::vector<double>& a, double x) {
  double term = 1.0, s = 0.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) term *= -x * x / ((2.0 * k - 1.0) * (2.0 * k));
    const double t = term * poly_moment(a, 2 * k);
    s += t;
    if (std::fabs(t) < 1e-18 * std::max(1.0, std::fabs(s)) && k > 2) break;
  }
  return 2.0 / kPi * s;
}

// closed forms at scale 1 for l >= 1, argument x = c l
double compact_closed(CompactFamily v, double x) {
  const double sx = std::sin(x), cx = std::cos(x);
  switch (v) {
  case CompactFamily::Askey:
    return 6.0 * (x * x + 2.0 * cx - 2.0) / (kPi * std::pow(x, 4));
  case CompactFamily::C2Wendland:
    return 240.0 * (x * x + x * sx + 4.0 * cx - 4.0) / (kPi * std::pow(x, 6));
  case CompactFamily::C4Wendland:
    // printed with the opposite overall sign; this sign matches quadrature
    return -8960.0 * (-4.0 * x * (x * x - 18.0) + 3.0 * (x * x - 35.0) * sx + 33.0 * x * cx) /
           (kPi * std::pow(x, 9));
  case CompactFamily::Spherical:
    break;
  }
  throw DomainError("no closed form for this family");
}

std::string compact_name(CompactFamily v) {
  switch (v) {
  case CompactFamily::Askey: return "askey";
  case CompactFamily::C2Wendland: return "c2_wendland";
  case CompactFamily::C4Wendland: return "c4_wendland";
  case CompactFamily::Spherical: return "spherical";
  }
  return "?";
}

void check_compact(CompactFamily v, double c) {
  require(finite_positive(c), compact_name(v) + ": c must be > 0");
  if (v == CompactFamily::C2Wendland || v == CompactFamily::C4Wendland)
    require(c <= 2.0 * kPi, compact_name(v) + ": c must be <= 2 pi");
}

// Adaptive level count for quadrature-based families: double n_max until the
// mass left beyond it is below rel_tail or max_level is reached.
DSchoenbergSeq adaptive_inversion(const std::function<double(double)>& psi, Dimension dim,
                                  const TruncationPolicy& trunc, const QuadSpec& quad) {
  int n = std::min(64, trunc.max_level);
  for (;;) {
    auto b = d_schoenberg_from_psi(psi, dim, n, quad);
    if (b.tail_bound() <= trunc.rel_tail || n >= trunc.max_level) return b;
    n = std::min(2 * n, trunc.max_level);
  }
}

double logistic_lambda(double l, double alpha, double beta, double kappa) {
  // 1/(1 + exp(t)), t = log(beta) + (l/alpha)^kappa
  const double t = std::log(beta) + std::pow(l / alpha, kappa);
  if (t > 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

} // namespace

// --- family bookkeeping -------------------------------------------------------

std::string family_name(const Family& f) {
  return std::visit(overloaded{
                        [](const Multiquadric&) { return std::string("multiquadric"); },
                        [](const SpectralModel&) { return std::string("spectral"); },
                        [](const MostRepulsive&) { return std::string("most_repulsive"); },
                        [](const Matern&) { return std::string("matern"); },
                        [](const CircularMatern&) { return std::string("circular_matern"); },
                        [](const Askey&) { return std::string("askey"); },
                        [](const C2Wendland&) { return std::string("c2_wendland"); },
                        [](const C4Wendland&) { return std::string("c4_wendland"); },
                        [](const SphericalModel&) { return std::string("spherical"); },
                    },
                    f);
}

void validate(const Family& f) {
  std::visit(overloaded{
                 [](const Multiquadric& m) {
                   require(finite_positive(m.tau), "multiquadric: tau must be > 0");
                   require(m.delta > 0.0 && m.delta < 1.0, "multiquadric: delta must be in (0,1)");
                 },
                 [](const SpectralModel& m) {
                   require(finite_positive(m.alpha) && finite_positive(m.beta) &&
                               finite_positive(m.kappa),
                           "spectral model: alpha, beta, kappa must be > 0");
                 },
                 [](const MostRepulsive& m) {
                   require(finite_positive(m.eta), "most repulsive: eta must be > 0");
                 },
                 [](const Matern& m) {
                   require(m.nu > 0.0 && m.nu <= 0.5, "matern: nu must be in (0, 1/2]");
                   require(finite_positive(m.c), "matern: c must be > 0");
                 },
                 [](const CircularMatern& m) {
                   require(finite_positive(m.sigma) && finite_positive(m.nu) &&
                               finite_positive(m.alpha),
                           "circular matern: sigma, nu, alpha must be > 0");
                 },
                 [](const Askey& m) { check_compact(CompactFamily::Askey, m.c); },
                 [](const C2Wendland& m) { check_compact(CompactFamily::C2Wendland, m.c); },
                 [](const C4Wendland& m) { check_compact(CompactFamily::C4Wendland, m.c); },
                 [](const SphericalModel& m) { check_compact(CompactFamily::Spherical, m.c); },
             },
             f);
}

bool has_psi(const Family& f) {
  return !std::holds_alternative<SpectralModel>(f) && !std::holds_alternative<MostRepulsive>(f) &&
         !std::holds_alternative<CircularMatern>(f);
}

std::function<double(double)> psi_function(const Family& f) {
  validate(f);
  return std::visit(
      overloaded{
          [](const Multiquadric& m) -> std::function<double(double)> {
            return [m](double s) { return multiquadric_psi(m.tau, m.delta, s); };
          },
          [](const Matern& m) -> std::function<double(double)> { return matern_psi(m.nu, m.c); },
          [](const Askey& m) -> std::function<double(double)> {
            return compact_support_psi(CompactFamily::Askey, m.c);
          },
          [](const C2Wendland& m) -> std::function<double(double)> {
            return compact_support_psi(CompactFamily::C2Wendland, m.c);
          },
          [](const C4Wendland& m) -> std::function<double(double)> {
            return compact_support_psi(CompactFamily::C4Wendland, m.c);
          },
          [](const SphericalModel& m) -> std::function<double(double)> {
            return compact_support_psi(CompactFamily::Spherical, m.c);
          },
          [&](const auto&) -> std::function<double(double)> {
            throw DomainError(family_name(f) + " is specified by its spectrum, not by psi");
          },
      },
      f);
}

// --- multiquadric -------------------------------------------------------------

double multiquadric_p(double delta) { return 2.0 * delta / (1.0 + delta * delta); }

double multiquadric_psi(double tau, double delta, double s) {
  // 1 + delta^2 - 2 delta cos s, without cancellation near s = 0
  const double h = std::sin(0.5 * s);
  const double q = (1.0 - delta) * (1.0 - delta) + 4.0 * delta * h * h;
  return std::pow((1.0 - delta) * (1.0 - delta) / q, tau);
}

double multiquadric_beta02(double tau, double delta) {
  validate(Multiquadric{tau, delta});
  const double A = std::log1p(delta), B = std::log1p(-delta);
  if (tau == 1.0) return (1.0 - delta) * (1.0 - delta) / (2.0 * delta) * (A - B);
  // ((1+d)^{2(1-t)} - (1-d)^{2(1-t)}) / (1-t) written to stay accurate near t = 1
  const double u = 1.0 - tau;
  const double diff = std::exp(2.0 * u * B) * std::expm1(2.0 * u * (A - B)) / u;
  return std::exp(2.0 * tau * B) / (4.0 * delta) * diff;
}

MultiquadricCoeffs multiquadric_coeffs(double tau, double delta, Dimension dim,
                                       const TruncationPolicy& trunc) {
  validate(Multiquadric{tau, delta});
  const int d = dim.value();
  const double p = multiquadric_p(delta);

  // negative binomial weights until the survival bound drops below rel_tail
  std::vector<double> nb;
  double b = std::exp(tau * std::log1p(-p));
  double acc = 0.0, tail = 1.0;
  for (int l = 0;; ++l) {
    nb.push_back(b);
    acc += b;
    const double next = b * p * (tau + l) / (l + 1.0);
    const double ratio = std::max(p, p * (tau + l + 1.0) / (l + 2.0));
    tail = ratio < 1.0 ? next / (1.0 - ratio) : 1.0 - acc;
    tail = std::min(tail, std::max(0.0, 1.0 - acc));
    if (tail < trunc.rel_tail || l >= trunc.max_level) break;
    b = next;
  }
  SchoenbergSeq schoenberg(nb, tail);

  const bool exact = d >= 2 && std::fabs(tau - 0.5 * (d - 1)) < 1e-15;
  if (exact) {
    // binom(l+d-2, l) delta^l (1-delta)^{d-1}, cut at the same survival level
    std::vector<double> bd;
    double v = std::pow(1.0 - delta, d - 1);
    double sum = 0.0, dtail = 1.0;
    for (int l = 0;; ++l) {
      bd.push_back(v);
      sum += v;
      const double next = v * delta * (l + d - 1.0) / (l + 1.0);
      const double ratio = std::max(delta, delta * (l + d) / (l + 2.0));
      dtail = ratio < 1.0 ? std::min(next / (1.0 - ratio), std::max(0.0, 1.0 - sum))
                          : std::max(0.0, 1.0 - sum);
      if (dtail < trunc.rel_tail || l >= trunc.max_level) break;
      v = next;
    }
    return {std::move(schoenberg), DSchoenbergSeq(dim, std::move(bd), dtail)};
  }

  auto dseq = schoenberg_to_d(schoenberg, dim, static_cast<int>(nb.size()) - 1);
  if (d == 2 && dseq.size() > 0) {
    auto v = dseq.beta();
    // the closed form includes level-0 mass the truncated sum left in the tail
    const double exact0 = multiquadric_beta02(tau, delta);
    double t = std::max(0.0, dseq.tail_bound() - std::max(0.0, exact0 - v[0]));
    v[0] = exact0;
    double sum = 0.0;
    for (double x : v) sum += x;
    t = std::min(t, std::max(0.0, 1.0 - sum));
    return {std::move(schoenberg), DSchoenbergSeq(dim, std::move(v), t)};
  }
  return {std::move(schoenberg), std::move(dseq)};
}

double multiquadric_delta_for_eta_max(double tau, double eta_max) {
  require(finite_positive(tau), "tau must be > 0");
  require(eta_max > 1.0, "eta_max must exceed 1");
  double lo = 1e-12, hi = 1.0 - 1e-15;
  if (1.0 / multiquadric_beta02(tau, hi) < eta_max)
    throw ConvergenceError("eta_max too large for this tau");
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 / multiquadric_beta02(tau, mid) < eta_max) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// --- spectral families --------------------------------------------------------

MercerSpectrum spectral_model_spectrum(double alpha, double beta, double kappa, Dimension dim,
                                       const TruncationPolicy& trunc) {
  validate(SpectralModel{alpha, beta, kappa});
  std::vector<double> lam;
  std::vector<double> mass;  // m_l lambda_l
  double eta = 0.0;
  // levels up to at least alpha carry the bulk of the mass
  const int floor_level = static_cast<int>(std::min<double>(std::ceil(alpha), trunc.max_level));
  for (int l = 0;; ++l) {
    if (l > trunc.max_level)
      throw ConvergenceError("spectral model: tail above tolerance at max_level " +
                             std::to_string(trunc.max_level));
    const double v = logistic_lambda(l, alpha, beta, kappa);
    lam.push_back(v);
    const double mv = multiplicity_real(l, dim) * v;
    eta += mv;
    if (l < floor_level || l < 1) continue;
    // bound the remaining mass by summing on with a geometric end bound
    double rest = 0.0, prev = mv;
    bool bounded = false;
    for (int j = l + 1; j < l + 1000000; ++j) {
      const double t = multiplicity_real(j, dim) * logistic_lambda(j, alpha, beta, kappa);
      const double r = prev > 0.0 ? t / prev : 0.0;
      rest += t;
      if (t == 0.0 || (r < 1.0 && t * r / (1.0 - r) < 1e-3 * trunc.rel_tail * eta)) {
        if (t != 0.0) rest += t * r / (1.0 - r);
        bounded = true;
        break;
      }
      if (rest > trunc.rel_tail * eta) break;
      prev = t;
    }
    if (bounded && rest <= trunc.rel_tail * eta) {
      while (!lam.empty() && lam.back() == 0.0) lam.pop_back();
      return MercerSpectrum(dim, SpectrumKind::Kernel, std::move(lam), rest);
    }
  }
}

double spectral_alpha_for_eta(double beta, double kappa, Dimension dim, double eta,
                              const TruncationPolicy& trunc) {
  require(finite_positive(eta), "eta must be > 0");
  auto f = [&](double a) { return spectral_model_spectrum(a, beta, kappa, dim, trunc).eta(); };
  double lo = 1e-3, hi = 1.0;
  if (f(lo) > eta) throw ConvergenceError("eta too small for this beta");
  while (f(hi) < eta) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw ConvergenceError("could not bracket alpha");
  }
  for (int it = 0; it < 100 && (hi - lo) > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < eta) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

int most_repulsive_level(double eta, Dimension dim) {
  require(finite_positive(eta), "most repulsive: eta must be > 0");
  double cum = 0.0;
  for (int n = 0;; ++n) {
    const double m = multiplicity_real(n, dim);
    if (eta <= cum + m) return n;
    cum += m;
  }
}

MercerSpectrum most_repulsive_spectrum(double eta, Dimension dim) {
  const int n = most_repulsive_level(eta, dim);
  std::vector<double> lam(n + 1, 1.0);
  double below = 0.0;
  for (int l = 0; l < n; ++l) below += multiplicity_real(l, dim);
  lam[n] = std::min(1.0, (eta - below) / multiplicity_real(n, dim));
  return MercerSpectrum(dim, SpectrumKind::Kernel, std::move(lam), 0.0);
}

std::function<double(double)> matern_psi(double nu, double c) {
  validate(Matern{nu, c});
  if (nu == 0.5) return [c](double s) { return std::exp(-s / c); };
  const double k = std::pow(2.0, 1.0 - nu) / std::tgamma(nu);
  return [nu, c, k](double s) {
    if (s <= 0.0) return 1.0;
    const double x = s / c;
    if (x > 700.0) return 0.0;
    return k * std::pow(x, nu) * std::cyl_bessel_k(nu, x);
  };
}

DSchoenbergSeq exponential_circle_coeffs(double c, int n_max) {
  require(finite_positive(c), "c must be > 0");
  require(n_max >= 0, "n_max must be >= 0");
  const double e = std::exp(-kPi / c);
  std::vector<double> b(n_max + 1);
  b[0] = c / kPi * (-std::expm1(-kPi / c));
  for (int l = 1; l <= n_max; ++l) {
    const double sgn = (l % 2 == 1) ? 1.0 : -1.0;  // (-1)^{l+1}
    b[l] = 2.0 / kPi * (1.0 + sgn * e) * c / (1.0 + c * c * l * l);
  }
  double s = 0.0;
  for (double v : b) s += v;
  return DSchoenbergSeq(Dimension(1), std::move(b), std::max(0.0, 1.0 - s));
}

MercerSpectrum circular_matern_spectrum(double sigma, double nu, double alpha,
                                        const TruncationPolicy& trunc) {
  validate(CircularMatern{sigma, nu, alpha});
  const double p = nu + 0.5;
  if (std::log(sigma) > p * std::log(alpha) + 1e-14)
    throw ExistenceError("circular Matern needs sigma <= alpha^{nu+1/2}");
  auto lam_at = [&](double l) {
    return std::exp(2.0 * std::log(sigma) - p * std::log(alpha * alpha + l * l));
  };
  const double s2 = sigma * sigma;
  // sum_{l>L} 2 sigma^2 l^{-2nu-1} <= sigma^2 L^{-2nu} / nu
  double eta0 = lam_at(0.0);
  int L = 1;
  while (L < trunc.max_level) {
    if (s2 * std::pow(L, -2.0 * nu) / nu <= trunc.rel_tail * eta0) break;
    L = std::min(2 * L, trunc.max_level);
  }
  std::vector<double> lam(L + 1);
  for (int l = 0; l <= L; ++l) lam[l] = std::min(1.0, lam_at(l));
  return MercerSpectrum(Dimension(1), SpectrumKind::Kernel, std::move(lam),
                        s2 * std::pow(L, -2.0 * nu) / nu);
}

// --- compact support ----------------------------------------------------------

std::function<double(double)> compact_support_psi(CompactFamily variant, double c) {
  check_compact(variant, c);
  const auto a = compact_poly(variant);
  return [a, c](double s) {
    const double u = s / c;
    if (u >= 1.0) return 0.0;
    double v = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * u + a[i];
    return v;
  };
}

DSchoenbergSeq compact_support_coeffs(CompactFamily variant, double c, int n_max) {
  check_compact(variant, c);
  require(n_max >= 0, "n_max must be >= 0");
  if (variant == CompactFamily::Spherical || c > kPi) {
    QuadSpec q;
    q.breakpoints = {c};
    return d_schoenberg_from_psi(compact_support_psi(variant, c), Dimension(1), n_max, q);
  }
  const auto a = compact_poly(variant);
  std::vector<double> b(n_max + 1);
  b[0] = c / kPi * poly_moment(a, 0);
  for (int l = 1; l <= n_max; ++l) {
    const double x = c * l;
    const double v = x < 5.0 ? cosine_moment_series(a, x) : compact_closed(variant, x);
    b[l] = c * v;
  }
  for (int l = 0; l <= n_max; ++l) {
    if (b[l] < -1e-12) throw DomainError("negative coefficient in compact-support family");
    b[l] = std::max(b[l], 0.0);
  }
  double s = 0.0;
  for (double v : b) s += v;
  return DSchoenbergSeq(Dimension(1), std::move(b), std::max(0.0, 1.0 - s));
}

// --- resolution ---------------------------------------------------------------

DSchoenbergSeq model_dschoenberg(const Family& f, Dimension dim, const TruncationPolicy& trunc) {
  validate(f);
  auto compact = [&](CompactFamily v, double c) {
    if (dim.value() == 1) {
      int n = std::min(64, trunc.max_level);
      for (;;) {
        auto b = compact_support_coeffs(v, c, n);
        if (b.tail_bound() <= trunc.rel_tail || n >= trunc.max_level) return b;
        n = std::min(4 * n, trunc.max_level);
      }
    }
    QuadSpec q;
    q.breakpoints = {c};
    return adaptive_inversion(compact_support_psi(v, c), dim, trunc, q);
  };
  return std::visit(
      overloaded{
          [&](const Multiquadric& m) {
            return multiquadric_coeffs(m.tau, m.delta, dim, trunc).dschoenberg;
          },
          [&](const Matern& m) {
            if (dim.value() == 1 && m.nu == 0.5) {
              // tail of the closed form is O(1/(c L)); cap by max_level
              const int n = std::min<double>(trunc.max_level,
                                             std::ceil(4.0 / (kPi * m.c * trunc.rel_tail)));
              return exponential_circle_coeffs(m.c, n);
            }
            QuadSpec q;
            q.grade_left = m.nu < 0.5;
            return adaptive_inversion(matern_psi(m.nu, m.c), dim, trunc, q);
          },
          [&](const Askey& m) { return compact(CompactFamily::Askey, m.c); },
          [&](const C2Wendland& m) { return compact(CompactFamily::C2Wendland, m.c); },
          [&](const C4Wendland& m) { return compact(CompactFamily::C4Wendland, m.c); },
          [&](const SphericalModel& m) { return compact(CompactFamily::Spherical, m.c); },
          [&](const auto&) -> DSchoenbergSeq {
            throw DomainError(family_name(f) + " has no correlation-function form");
          },
      },
      f);
}

RhoMax model_eta_max(const Family& f, Dimension dim, const TruncationPolicy& trunc) {
  if (const auto* m = std::get_if<Multiquadric>(&f); m && dim.value() == 2)
    return {1.0 / multiquadric_beta02(m->tau, m->delta), false};
  // every psi in the catalog is nonnegative, so level 0 attains the infimum
  return eta_max(model_dschoenberg(f, dim, trunc), true);
}

MercerSpectrum kernel_spectrum(const IsotropicModel& model) {
  validate(model.family);
  const auto& f = model.family;
  if (const auto* m = std::get_if<SpectralModel>(&f))
    return spectral_model_spectrum(m->alpha, m->beta, m->kappa, model.dim, model.trunc);
  if (const auto* m = std::get_if<MostRepulsive>(&f)) return most_repulsive_spectrum(m->eta, model.dim);
  if (const auto* m = std::get_if<CircularMatern>(&f)) {
    if (model.dim.value() != 1) throw DimensionError("circular Matern is defined on S^1 only");
    return circular_matern_spectrum(m->sigma, m->nu, m->alpha, model.trunc);
  }
  require(finite_positive(model.scale), "model scale (eta or chi) must be > 0");
  const auto beta = model_dschoenberg(f, model.dim, model.trunc);
  if (model.mode == Mode::Kernel) return mercer_from_d(beta, model.scale);
  auto alpha = correlation_spectrum(beta);
  std::vector<double> t(alpha.values());
  for (double& v : t) v *= model.scale;
  return to_kernel(MercerSpectrum(model.dim, SpectrumKind::DensityKernel, std::move(t),
                                  model.scale * alpha.tail_bound()));
}

} // namespace spheredpp
