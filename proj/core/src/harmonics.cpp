#include "spheredpp/harmonics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spheredpp/errors.hpp"

namespace spheredpp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_arg(double x) {
  if (!(std::fabs(x) <= 1.0)) throw DomainError("argument must lie in [-1, 1]");
}

void check_level(int l) {
  if (l < 0) throw DomainError("level must be >= 0");
}

std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t f = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / f)
      throw DomainError("multiplicity overflows 64 bits");
    r = r * f / i;  // exact: r * f is a multiple of i
  }
  return r;
}

double log_binom(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

std::vector<double> gegenbauer_levels(int L, double lam, double x) {
  check_level(L);
  check_arg(x);
  if (lam < 0.0) throw DomainError("Gegenbauer parameter must be >= 0");
  std::vector<double> c(L + 1);
  if (lam == 0.0) {
    // Chebyshev: C_l^{(0)}(cos s) = cos(l s)
    c[0] = 1.0;
    if (L >= 1) c[1] = x;
    for (int l = 2; l <= L; ++l) c[l] = 2.0 * x * c[l - 1] - c[l - 2];
    return c;
  }
  c[0] = 1.0;
  if (L >= 1) c[1] = 2.0 * lam * x;
  for (int l = 2; l <= L; ++l)
    c[l] = (2.0 * (l + lam - 1.0) * x * c[l - 1] - (l + 2.0 * lam - 2.0) * c[l - 2]) / l;
  return c;
}

double gegenbauer(int l, double lam, double x) {
  return gegenbauer_levels(l, lam, x)[l];
}

double gegenbauer_at_one(int l, double lam) {
  check_level(l);
  if (lam < 0.0) throw DomainError("Gegenbauer parameter must be >= 0");
  if (lam == 0.0) return 1.0;
  // product form stays exact while the value is an integer below 2^53
  double v = 1.0;
  for (int k = 1; k <= l; ++k) v = v * (k + 2.0 * lam - 1.0) / k;
  return v;
}

std::vector<double> gegenbauer_normalized_levels(int L, double lam, double x) {
  check_level(L);
  check_arg(x);
  if (lam < 0.0) throw DomainError("Gegenbauer parameter must be >= 0");
  std::vector<double> p(L + 1);
  p[0] = 1.0;
  if (L >= 1) p[1] = x;
  for (int l = 2; l <= L; ++l)
    p[l] = (2.0 * (l + lam - 1.0) * x * p[l - 1] - (l - 1.0) * p[l - 2]) / (l + 2.0 * lam - 1.0);
  return p;
}

double assoc_legendre(int l, int m, double x) {
  check_level(l);
  check_arg(x);
  if (std::abs(m) > l) throw DomainError("assoc_legendre: |m| must not exceed l");
  if (m < 0) {
    const int mm = -m;
    const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial_ratio(l, mm) * assoc_legendre(l, mm, x);
  }
  // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
  const double sq = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= -(2.0 * i - 1.0) * sq;
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pm1;
  double p0 = pmm, p1 = pm1;
  for (int k = m + 2; k <= l; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k + m - 1.0) * p0) / (k - m);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> normalized_legendre_table(int L, double x) {
  check_level(L);
  check_arg(x);
  std::vector<double> t(legendre_table_index(L, L) + 1, 0.0);
  const double sq = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 0; m <= L; ++m) {
    if (m > 0) pmm *= -sq * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    t[legendre_table_index(m, m)] = pmm;
    if (m == L) break;
    double p0 = pmm;
    double p1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    t[legendre_table_index(m + 1, m)] = p1;
    for (int l = m + 2; l <= L; ++l) {
      const double ll = static_cast<double>(l) * l, mm = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - mm) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      const double p2 = a * (x * p1 - b * p0);
      t[legendre_table_index(l, m)] = p2;
      p0 = p1;
      p1 = p2;
    }
  }
  return t;
}

std::vector<int> index_set(int l, Dimension dim) {
  check_level(l);
  switch (dim.value()) {
  case 1:
    return l == 0 ? std::vector<int>{0} : std::vector<int>{-1, 1};
  case 2: {
    std::vector<int> ks;
    ks.reserve(2 * l + 1);
    for (int k = -l; k <= l; ++k) ks.push_back(k);
    return ks;
  }
  default:
    throw DimensionError("index sets are implemented for d in {1,2}");
  }
}

bool is_valid_index(const HarmonicIndex& idx, Dimension dim) {
  if (idx.level < 0) return false;
  if (dim.value() == 1)
    return idx.level == 0 ? idx.order == 0 : (idx.order == 1 || idx.order == -1);
  if (dim.value() == 2) return std::abs(idx.order) <= idx.level;
  return false;
}

std::complex<double> spherical_harmonic(Dimension dim, const HarmonicIndex& idx,
                                        const SpherePoint& x) {
  if (dim.value() >= 3) throw DimensionError("eigenfunctions are implemented for d in {1,2}");
  if (x.dim() != dim) throw DimensionError("point dimension does not match");
  if (!is_valid_index(idx, dim))
    throw DomainError("invalid harmonic index (" + std::to_string(idx.level) + "," +
                      std::to_string(idx.order) + ")");
  if (dim.value() == 1) {
    const double a = static_cast<double>(idx.order) * idx.level * x.theta();
    return std::polar(1.0 / std::sqrt(2.0 * kPi), a);
  }
  const int k = std::abs(idx.order);
  const auto table = normalized_legendre_table(idx.level, std::cos(x.theta()));
  const std::complex<double> y =
      table[legendre_table_index(idx.level, k)] * std::polar(1.0, k * x.phi());
  if (idx.order >= 0) return y;
  return (k % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

std::uint64_t multiplicity(int l, Dimension dim) {
  check_level(l);
  const auto d = static_cast<std::uint64_t>(dim.value());
  const auto L = static_cast<std::uint64_t>(l);
  if (d == 1) return l == 0 ? 1 : 2;
  // (2l+d-1)/(d-1) binom(l+d-2, l) = binom(l+d-1, l) + binom(l+d-2, l-1)
  const std::uint64_t a = binom_u64(L + d - 1, L);
  const std::uint64_t b = l == 0 ? 0 : binom_u64(L + d - 2, L - 1);
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw DomainError("multiplicity overflows 64 bits");
  return a + b;
}

double multiplicity_real(int l, Dimension dim) {
  check_level(l);
  const int d = dim.value();
  if (d == 1) return l == 0 ? 1.0 : 2.0;
  if (l == 0) return 1.0;
  if (d <= 64) {
    try {
      return static_cast<double>(multiplicity(l, dim));
    } catch (const DomainError&) {
      // too large for 64 bits; fall through to the log-gamma form
    }
  }
  return (2.0 * l + d - 1.0) / (d - 1.0) * std::exp(log_binom(l + d - 2.0, l));
}

double log_factorial_ratio(int l, int k) {
  if (k < 0 || k > l) throw DomainError("factorial ratio needs 0 <= k <= l");
  return std::lgamma(l - k + 1.0) - std::lgamma(l + k + 1.0);
}

double factorial_ratio(int l, int k) {
  if (k < 0 || k > l) throw DomainError("factorial ratio needs 0 <= k <= l");
  if (l > 30) return std::exp(log_factorial_ratio(l, k));
  double r = 1.0;
  for (int i = l - k + 1; i <= l + k; ++i) r /= i;
  return r;
}

double harmonic_sq_bound(Dimension dim, const HarmonicIndex& idx) {
  if (!is_valid_index(idx, dim)) throw DomainError("invalid harmonic index");
  if (dim.value() == 1) return 1.0 / (2.0 * kPi);
  return (2.0 * idx.level + 1.0) / (4.0 * kPi);
}

double scaled_harmonic_sq_bound(const HarmonicIndex& idx) {
  if (!is_valid_index(idx, Dimension(2))) throw DomainError("invalid harmonic index");
  return (2.0 * idx.level + 1.0) / (4.0 * kPi) * factorial_ratio(idx.level, std::abs(idx.order));
}

} // namespace spheredpp
