#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace spheredpp {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, computed once by Newton iteration on P_n and cached.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

/// Controls for the node-doubling composite rule.
struct QuadSpec {
  int min_nodes = 64;
  int max_nodes = 8192;
  /// Stop once two successive estimates differ by less than this (max norm).
  double tol = 1e-11;
  /// Interior points where the integrand is not smooth (support ends, kinks).
  std::vector<double> breakpoints;
  /// Add geometrically shrinking panels at the left end point, for
  /// integrands like s^a with 0 < a < 1.
  bool grade_left = false;
};

/// Vector integrand: fills out[0..n) with the components at the abscissa.
using VectorIntegrand = std::function<void(double, std::span<double>)>;

struct QuadResult {
  std::vector<double> values;
  int nodes_per_panel = 0;
  double last_change = 0.0;
};

/// Integrates every component of f over [a, b] with composite Gauss-Legendre
/// panels, doubling the nodes per panel until the estimates settle.
/// Throws ConvergenceError when max_nodes is reached first.
QuadResult integrate_vector(const VectorIntegrand& f, std::size_t components, double a,
                            double b, const QuadSpec& spec = {});

/// Scalar convenience wrapper over integrate_vector.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec = {});

} // namespace spheredpp
