#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "spheredpp/errors.hpp"
#include "spheredpp/rng.hpp"
#include "spheredpp/sphere.hpp"

using namespace spheredpp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Dimension, RejectsZero) {
  EXPECT_THROW(Dimension(0), DomainError);
  EXPECT_TRUE(Dimension(2).has_points());
  EXPECT_FALSE(Dimension(3).has_points());
}

TEST(GeodesicDistance, Basics) {
  const auto n = SpherePoint::on_sphere(0.0, 0.0);
  const auto s = SpherePoint::on_sphere(kPi, 0.0);
  const auto e = SpherePoint::on_sphere(kPi / 2, 1.0);
  EXPECT_DOUBLE_EQ(geodesic_distance(n, n), 0.0);
  EXPECT_NEAR(geodesic_distance(n, s), kPi, 1e-15);
  EXPECT_NEAR(geodesic_distance(n, e), kPi / 2, 1e-15);

  const auto a = SpherePoint::on_circle(0.1), b = SpherePoint::on_circle(2 * kPi - 0.1);
  EXPECT_NEAR(geodesic_distance(a, b), 0.2, 1e-15);
  EXPECT_NEAR(geodesic_distance(SpherePoint::on_circle(0.0), SpherePoint::on_circle(kPi)), kPi,
              1e-15);
  EXPECT_THROW(geodesic_distance(a, n), DimensionError);
}

TEST(GeodesicDistance, SymmetricAndTriangle) {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto x = sample_uniform(Dimension(2), rng);
    const auto y = sample_uniform(Dimension(2), rng);
    const auto z = sample_uniform(Dimension(2), rng);
    EXPECT_DOUBLE_EQ(geodesic_distance(x, y), geodesic_distance(y, x));
    EXPECT_LE(geodesic_distance(x, z), geodesic_distance(x, y) + geodesic_distance(y, z) + 1e-12);
  }
}

TEST(SurfaceMeasure, KnownValues) {
  EXPECT_NEAR(surface_measure(Dimension(1)), 2 * kPi, 1e-14);
  EXPECT_NEAR(surface_measure(Dimension(2)), 4 * kPi, 1e-14);
  // 2 pi^2, with Gamma(2) = 1
  EXPECT_NEAR(surface_measure(Dimension(3)), 19.739208802178716, 1e-13);
}

TEST(SampleUniform, UnitNormAndDeterministic) {
  Rng a(99), b(99);
  double mean[3] = {0, 0, 0};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto p = sample_uniform(Dimension(2), a);
    const auto q = sample_uniform(Dimension(2), b);
    ASSERT_EQ(p, q);
    const auto u = p.unit_vector();
    ASSERT_NEAR(u[0] * u[0] + u[1] * u[1] + u[2] * u[2], 1.0, 1e-14);
    for (int k = 0; k < 3; ++k) mean[k] += u[k] / n;
  }
  EXPECT_LT(std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]), 0.02);
}

TEST(EqualAreaProjection, Landmarks) {
  const auto np = equal_area_project(SpherePoint::on_sphere(0.0, 0.3));
  EXPECT_NEAR(np.u, 0.0, 1e-15);
  EXPECT_NEAR(np.v, 0.0, 1e-15);
  const auto eq = equal_area_project(SpherePoint::on_sphere(kPi / 2, 0.0));
  EXPECT_NEAR(eq.u, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(eq.v, 0.0, 1e-15);
  const auto sp = equal_area_project(SpherePoint::on_sphere(kPi, 1.0));
  EXPECT_NEAR(std::hypot(sp.u, sp.v), 2.0, 1e-15);
  EXPECT_THROW(equal_area_project(SpherePoint::on_circle(1.0)), DimensionError);
}

TEST(PointPattern, RejectsMismatchAndDuplicates) {
  PointPattern p(Dimension(2));
  p.add(SpherePoint::on_sphere(1.0, 2.0));
  EXPECT_THROW(p.add(SpherePoint::on_circle(1.0)), DimensionError);
  EXPECT_THROW(p.add(SpherePoint::on_sphere(1.0, 2.0)), DomainError);
  p.add(SpherePoint::on_sphere(0.5, 2.0));
  EXPECT_EQ(p.without(0).size(), 1u);
}

TEST(PatternCsv, RoundTripIsExact) {
  Rng rng(3);
  for (int d : {1, 2}) {
    PointPattern p(Dimension{d});
    for (int i = 0; i < 50; ++i) p.add(sample_uniform(Dimension(d), rng));
    std::stringstream ss;
    write_pattern_csv(ss, p);
    const auto q = read_pattern_csv(ss);
    ASSERT_EQ(q.size(), p.size());
    ASSERT_EQ(q.dim(), p.dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_EQ(q[i].theta(), p[i].theta());
      EXPECT_EQ(q[i].phi(), p[i].phi());
    }
  }
}

TEST(PatternCsv, Header) {
  PointPattern p(Dimension(2));
  p.add(SpherePoint::on_sphere(0.0, 0.0));
  std::stringstream ss;
  write_pattern_csv(ss, p);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "theta,phi,x,y,z");
}
