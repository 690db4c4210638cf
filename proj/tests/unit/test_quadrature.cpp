#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "spheredpp/errors.hpp"
#include "spheredpp/quadrature.hpp"

using namespace spheredpp;

TEST(GaussLegendre, MatchesGolubWelsch) {
  for (int n : {2, 5, 16, 64, 129}) {
    const auto rule = gauss_legendre(n);
    std::vector<double> x, w;
    oracle::golub_welsch(n, x, w);
    ASSERT_EQ(rule->nodes.size(), static_cast<std::size_t>(n));
    // both sorted ascending
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(rule->nodes[i], x[i], 1e-13) << "n=" << n << " i=" << i;
      EXPECT_NEAR(rule->weights[i], w[i], 1e-13) << "n=" << n << " i=" << i;
    }
  }
}

TEST(GaussLegendre, ExactForPolynomials) {
  const auto rule = gauss_legendre(10);
  for (int k = 0; k <= 19; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i)
      s += rule->weights[i] * std::pow(rule->nodes[i], k);
    const double want = k % 2 ? 0.0 : 2.0 / (k + 1.0);
    EXPECT_NEAR(s, want, 1e-14) << k;
  }
}

TEST(Integrate, SmoothAndKinked) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0.0, 1.0), std::expm1(1.0), 1e-13);
  QuadSpec spec;
  spec.breakpoints = {0.3};
  EXPECT_NEAR(integrate([](double x) { return std::fabs(x - 0.3); }, 0.0, 1.0, spec),
              0.5 * (0.09 + 0.49), 1e-13);
}

TEST(Integrate, GradedLeftEndSingularity) {
  QuadSpec spec;
  spec.grade_left = true;
  // int_0^1 x^{1/4} dx = 4/5, int_0^pi s^{1/2} ds
  EXPECT_NEAR(integrate([](double x) { return std::pow(x, 0.25); }, 0.0, 1.0, spec), 0.8, 1e-12);
  EXPECT_NEAR(integrate([](double s) { return std::sqrt(s); }, 0.0, 3.0, spec), 2.0 * std::sqrt(3.0),
              1e-12);
}

TEST(Integrate, ThrowsWhenNotConverging) {
  QuadSpec spec;
  spec.max_nodes = 64;
  EXPECT_THROW(integrate([](double x) { return std::sin(1.0 / (x + 1e-6)); }, 0.0, 1.0, spec),
               ConvergenceError);
}
