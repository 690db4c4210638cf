#include "spheredpp/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "spheredpp/errors.hpp"

namespace spheredpp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

} // namespace

Dimension::Dimension(int d) : d_(d) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1, got " + std::to_string(d));
}

SpherePoint SpherePoint::on_circle(double theta) {
  if (!std::isfinite(theta)) throw DomainError("angle must be finite");
  return SpherePoint(1, wrap_angle(theta), 0.0);
}

SpherePoint SpherePoint::on_sphere(double colatitude, double longitude) {
  if (!std::isfinite(colatitude) || !std::isfinite(longitude))
    throw DomainError("angles must be finite");
  if (colatitude < 0.0 || colatitude > kPi)
    throw DomainError("colatitude must lie in [0, pi]");
  return SpherePoint(2, colatitude, wrap_angle(longitude));
}

SpherePoint SpherePoint::from_cartesian(Dimension dim, const std::array<double, 3>& v) {
  if (dim.value() == 1) {
    if (v[0] == 0.0 && v[1] == 0.0) throw DomainError("zero vector");
    return on_circle(std::atan2(v[1], v[0]));
  }
  if (dim.value() != 2) throw DimensionError("points are implemented for d in {1,2}");
  const double r = std::hypot(v[0], v[1], v[2]);
  if (r == 0.0) throw DomainError("zero vector");
  const double z = std::clamp(v[2] / r, -1.0, 1.0);
  return on_sphere(std::acos(z), std::atan2(v[1], v[0]));
}

std::array<double, 3> SpherePoint::unit_vector() const {
  if (d_ == 1) return {std::cos(theta_), std::sin(theta_), 0.0};
  const double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

PointPattern::PointPattern(Dimension dim, std::vector<SpherePoint> points) : dim_(dim) {
  points_.reserve(points.size());
  for (const auto& p : points) add(p);
}

void PointPattern::add(const SpherePoint& p) {
  if (p.dim() != dim_) throw DimensionError("point dimension does not match pattern");
  if (std::find(points_.begin(), points_.end(), p) != points_.end())
    throw DomainError("duplicate point in pattern");
  points_.push_back(p);
}

PointPattern PointPattern::without(std::size_t i) const {
  PointPattern out(dim_);
  out.points_.reserve(points_.size());
  for (std::size_t j = 0; j < points_.size(); ++j)
    if (j != i) out.points_.push_back(points_[j]);
  return out;
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
  if (x.dim() != y.dim()) throw DimensionError("geodesic_distance: dimension mismatch");
  if (x.dim().value() == 1) {
    // exact on the circle, avoids arccos loss near 0 and pi
    double a = std::fabs(x.theta() - y.theta());
    if (a > kPi) a = kTwoPi - a;
    return a;
  }
  const auto u = x.unit_vector();
  const auto v = y.unit_vector();
  const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

double surface_measure(Dimension dim) {
  const double h = 0.5 * (dim.value() + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

SpherePoint sample_uniform(Dimension dim, Rng& rng) {
  switch (dim.value()) {
  case 1:
    return SpherePoint::on_circle(kTwoPi * rng.uniform());
  case 2: {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = kTwoPi * rng.uniform();
    return SpherePoint::on_sphere(std::acos(z), phi);
  }
  default:
    throw DimensionError("sample_uniform: d in {1,2} only");
  }
}

PlanePoint equal_area_project(const SpherePoint& x, Hemisphere centre) {
  if (x.dim().value() != 2) throw DimensionError("equal_area_project needs a point on S^2");
  const double a = centre == Hemisphere::North ? x.theta() : kPi - x.theta();
  const double r = 2.0 * std::sin(0.5 * a);
  return {r * std::cos(x.phi()), r * std::sin(x.phi())};
}

void write_pattern_csv(std::ostream& out, const PointPattern& pattern) {
  if (pattern.dim().value() == 1) {
    out << "theta\n";
    for (const auto& p : pattern) out << fmt17(p.theta()) << '\n';
    return;
  }
  out << "theta,phi,x,y,z\n";
  for (const auto& p : pattern) {
    const auto u = p.unit_vector();
    out << fmt17(p.theta()) << ',' << fmt17(p.phi()) << ',' << fmt17(u[0]) << ','
        << fmt17(u[1]) << ',' << fmt17(u[2]) << '\n';
  }
}

PointPattern read_pattern_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty point CSV");
  const auto header = split_csv(line);
  int d = 0;
  if (header.size() == 1 && header[0] == "theta") d = 1;
  else if (header.size() >= 2 && header[0] == "theta" && header[1] == "phi") d = 2;
  else throw DomainError("unrecognised point CSV header: " + line);

  PointPattern pattern{Dimension(d)};
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    try {
      if (d == 1) pattern.add(SpherePoint::on_circle(std::stod(cells.at(0))));
      else pattern.add(SpherePoint::on_sphere(std::stod(cells.at(0)), std::stod(cells.at(1))));
    } catch (const std::logic_error&) {
      throw DomainError("bad point CSV row " + std::to_string(lineno));
    }
  }
  return pattern;
}

} // namespace spheredpp
