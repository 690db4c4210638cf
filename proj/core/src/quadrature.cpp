#include "spheredpp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "spheredpp/errors.hpp"

namespace spheredpp {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : (n == 1 ? x : p1);
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::vector<double> panel_edges(double a, double b, const QuadSpec& spec) {
  std::vector<double> edges{a, b};
  for (double c : spec.breakpoints)
    if (c > a && c < b) edges.push_back(c);
  if (spec.grade_left) {
    double h = (b - a) / 2.0;
    for (int k = 0; k < 40 && h > 1e-14 * (b - a); ++k, h /= 4.0) edges.push_back(a + h);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void apply_rule(const VectorIntegrand& f, std::size_t m, const std::vector<double>& edges,
                const GaussLegendreRule& rule, std::vector<double>& acc,
                std::vector<double>& buf) {
  std::fill(acc.begin(), acc.end(), 0.0);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p], hi = edges[p + 1];
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      std::fill(buf.begin(), buf.end(), 0.0);
      f(c + r * rule.nodes[i], std::span<double>(buf.data(), m));
      const double w = r * rule.weights[i];
      for (std::size_t j = 0; j < m; ++j) acc[j] += w * buf[j];
    }
  }
}

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

} // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const GaussLegendreRule>(build_rule(n));
  cache.emplace(n, rule);
  return rule;
}

QuadResult integrate_vector(const VectorIntegrand& f, std::size_t components, double a,
                            double b, const QuadSpec& spec) {
  if (!(b > a)) throw DomainError("integrate_vector: need a < b");
  if (spec.min_nodes < 1 || spec.max_nodes < spec.min_nodes)
    throw DomainError("integrate_vector: bad node limits");
  const auto edges = panel_edges(a, b, spec);
  std::vector<double> prev(components), cur(components), buf(components);
  int n = spec.min_nodes;
  apply_rule(f, components, edges, *gauss_legendre(n), prev, buf);
  double change = 0.0;
  while (n < spec.max_nodes) {
    n = std::min(2 * n, spec.max_nodes);
    apply_rule(f, components, edges, *gauss_legendre(n), cur, buf);
    change = 0.0;
    for (std::size_t j = 0; j < components; ++j)
      change = std::max(change, std::fabs(cur[j] - prev[j]));
    if (!std::isfinite(change)) throw ConvergenceError("quadrature: non-finite integrand");
    prev.swap(cur);
    if (change < spec.tol) return {std::move(prev), n, change};
  }
  throw ConvergenceError("quadrature did not settle at " + std::to_string(spec.max_nodes) +
                         " nodes per panel (last change " + fmt_g(change) + ")");
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec) {
  auto r = integrate_vector([&](double x, std::span<double> out) { out[0] = f(x); }, 1, a, b,
                            spec);
  return r.values[0];
}

} // namespace spheredpp
