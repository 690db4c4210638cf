#pragma once

// Independent reference implementations used only by the tests.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

constexpr double kPi = std::numbers::pi;

/// Gauss-Legendre nodes and weights by Golub-Welsch (eigen-decomposition of
/// the Jacobi matrix).
inline void golub_welsch(int n, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()[i];
    const double v = es.eigenvectors()(0, i);
    w[i] = 2.0 * v * v;
  }
}

/// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Unnormalized Gegenbauer C_l^{(lam)}(x) from the explicit sum
/// sum_k (-1)^k Gamma(l-k+lam) / (Gamma(lam) k! (l-2k)!) (2x)^{l-2k}, lam > 0.
inline double gegenbauer_explicit(int l, double lam, double x) {
  // alternating sum: long double keeps the cancellation below 1e-13
  long double s = 0.0L;
  for (int k = 0; 2 * k <= l; ++k) {
    const long double lg = std::lgamma(static_cast<long double>(l - k + lam)) -
                           std::lgamma(static_cast<long double>(lam)) - std::lgamma(k + 1.0L) -
                           std::lgamma(l - 2.0L * k + 1.0L);
    s += (k % 2 ? -1.0L : 1.0L) * std::exp(lg) * std::pow(2.0L * x, l - 2 * k);
  }
  return static_cast<double>(s);
}

/// Spherical harmonic on S^2 built from the standard library's associated
/// Legendre function (which omits the Condon-Shortley phase).
inline std::complex<double> ylm_std(int l, int k, double theta, double phi) {
  const int m = std::abs(k);
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * std::exp(std::lgamma(l - m + 1.0) -
                                                                         std::lgamma(l + m + 1.0)));
  const double cs = (m % 2 ? -1.0 : 1.0);
  const std::complex<double> y =
      cs * norm * std::assoc_legendre(l, m, std::cos(theta)) * std::polar(1.0, m * phi);
  if (k >= 0) return y;
  return (m % 2 ? -1.0 : 1.0) * std::conj(y);
}

} // namespace oracle
