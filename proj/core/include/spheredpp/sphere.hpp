#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "spheredpp/rng.hpp"

namespace spheredpp {

/// Dimension d of the unit sphere S^d in R^{d+1}.
///
/// The coefficient calculus works for any d >= 1; points, harmonics and
/// simulation are provided for d in {1, 2}.
class Dimension {
public:
  explicit Dimension(int d);

  int value() const noexcept { return d_; }

  /// True when points and eigenfunctions are implemented for this d.
  bool has_points() const noexcept { return d_ == 1 || d_ == 2; }

  friend bool operator==(Dimension, Dimension) = default;

private:
  int d_;
};

/// A point on S^1 or S^2 stored by its angles.
///
/// On S^1 the single angle is theta in [0, 2pi). On S^2, theta is the
/// colatitude in [0, pi] and phi the longitude in [0, 2pi).
class SpherePoint {
public:
  static SpherePoint on_circle(double theta);
  static SpherePoint on_sphere(double colatitude, double longitude);
  /// Builds a point from Cartesian coordinates; the vector is normalized.
  static SpherePoint from_cartesian(Dimension dim, const std::array<double, 3>& v);

  Dimension dim() const noexcept { return Dimension(d_); }
  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  /// Unit vector in R^{d+1}; the unused trailing coordinate is 0 when d = 1.
  std::array<double, 3> unit_vector() const;

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

private:
  SpherePoint(int d, double theta, double phi) : d_(d), theta_(theta), phi_(phi) {}

  int d_;
  double theta_;
  double phi_;
};

/// Finite configuration of distinct points on a common sphere.
class PointPattern {
public:
  explicit PointPattern(Dimension dim) : dim_(dim) {}
  PointPattern(Dimension dim, std::vector<SpherePoint> points);

  Dimension dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  const std::vector<SpherePoint>& points() const noexcept { return points_; }
  const SpherePoint& operator[](std::size_t i) const { return points_[i]; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Appends a point; rejects a dimension mismatch or an exact duplicate.
  void add(const SpherePoint& p);

  /// Pattern without the point at index i.
  PointPattern without(std::size_t i) const;

private:
  Dimension dim_;
  std::vector<SpherePoint> points_;
};

/// Great-circle distance arccos(x . y) in [0, pi].
double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

/// Total surface measure 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double surface_measure(Dimension dim);

/// Point drawn from the normalized surface measure.
SpherePoint sample_uniform(Dimension dim, Rng& rng);

enum class Hemisphere { North, South };

struct PlanePoint {
  double u;
  double v;
};

/// Lambert azimuthal equal-area projection of a point on S^2 centred at the
/// chosen pole: radius 2 sin(a/2) with a the angular distance to that pole,
/// azimuth equal to the longitude. The whole sphere maps to the disc of radius 2.
PlanePoint equal_area_project(const SpherePoint& x, Hemisphere centre = Hemisphere::North);

/// CSV with header `theta` (d = 1) or `theta,phi,x,y,z` (d = 2), 17 significant digits.
void write_pattern_csv(std::ostream& out, const PointPattern& pattern);

/// Reads the format written by write_pattern_csv; the header decides the dimension.
PointPattern read_pattern_csv(std::istream& in);

} // namespace spheredpp
