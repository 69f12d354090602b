#include "orlicz/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

double Point::norm() const {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return std::sqrt(s);
}

double Point::distance(const Point& other) const {
  double s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double d = coords_[i] - other.coords_[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point Point::shifted(std::size_t axis, double offset) const {
  std::vector<double> c = coords_;
  c.at(axis) += offset;
  return Point(std::move(c));
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  os << ')';
  return os.str();
}

double unit_ball_volume(std::size_t n) {
  const double half = static_cast<double>(n) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

SpatialDomain SpatialDomain::ball(Point center, double radius, std::vector<Point> excluded) {
  if (center.dimension() == 0) throw UsageError("ball: dimension must be positive");
  if (!(radius > 0.0) || std::isinf(radius)) throw UsageError("ball: radius must be finite and positive");
  SpatialDomain d;
  d.shape_ = Shape::ball;
  d.radius_ = radius;
  d.bounded_ = true;
  d.measure_ = unit_ball_volume(center.dimension()) * std::pow(radius, center.dimension());
  std::vector<double> lo, hi;
  for (double c : center.coords()) {
    lo.push_back(c - radius);
    hi.push_back(c + radius);
  }
  d.lo_ = Point(std::move(lo));
  d.hi_ = Point(std::move(hi));
  d.center_ = std::move(center);
  d.excluded_ = std::move(excluded);
  d.validate_exclusions();
  return d;
}

SpatialDomain SpatialDomain::box(Point lo, Point hi, std::vector<Point> excluded) {
  if (lo.dimension() == 0 || lo.dimension() != hi.dimension()) {
    throw UsageError("box: corner dimensions must agree and be positive");
  }
  SpatialDomain d;
  d.shape_ = Shape::box;
  d.bounded_ = true;
  d.measure_ = 1.0;
  std::vector<double> center;
  for (std::size_t i = 0; i < lo.dimension(); ++i) {
    if (!(lo[i] < hi[i])) throw UsageError("box: lo must be below hi on every axis");
    const bool finite = std::isfinite(lo[i]) && std::isfinite(hi[i]);
    if (!finite) {
      d.bounded_ = false;
      if (std::isfinite(lo[i]) || std::isfinite(hi[i])) {
        throw UsageError("box: half-infinite axes are not supported");
      }
      center.push_back(0.0);
    } else {
      d.measure_ *= hi[i] - lo[i];
      center.push_back(0.5 * (lo[i] + hi[i]));
    }
  }
  if (!d.bounded_) d.measure_ = std::numeric_limits<double>::infinity();
  d.center_ = Point(std::move(center));
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  d.radius_ = d.half_width(0);
  d.excluded_ = std::move(excluded);
  d.validate_exclusions();
  return d;
}

SpatialDomain SpatialDomain::whole_space(std::size_t dimension, std::vector<Point> excluded) {
  const double inf = std::numeric_limits<double>::infinity();
  return box(Point(std::vector<double>(dimension, -inf)), Point(std::vector<double>(dimension, inf)),
             std::move(excluded));
}

double SpatialDomain::half_width(std::size_t axis) const {
  if (shape_ == Shape::ball) return radius_;
  return 0.5 * (hi_[axis] - lo_[axis]);
}

double SpatialDomain::scale() const {
  if (!bounded_) return 1.0;
  if (shape_ == Shape::ball) return radius_;
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dimension(); ++i) s = std::min(s, half_width(i));
  return s;
}

bool SpatialDomain::contains(const Point& x) const {
  if (x.dimension() != dimension()) return false;
  if (shape_ == Shape::ball) return x.distance(center_) < radius_;
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (!(lo_[i] < x[i] && x[i] < hi_[i])) return false;
  }
  return true;
}

bool SpatialDomain::is_excluded(const Point& x) const {
  return std::find(excluded_.begin(), excluded_.end(), x) != excluded_.end();
}

void SpatialDomain::validate_exclusions() const {
  for (const Point& e : excluded_) {
    if (!contains(e)) throw UsageError("domain: excluded point " + to_string(e) + " lies outside the shape");
  }
}

std::string SpatialDomain::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (shape_ == Shape::ball) {
    os << "ball(center=" << to_string(center_) << ", radius=" << radius_ << ')';
  } else if (!bounded_) {
    os << "whole_space(n=" << dimension() << ')';
  } else {
    os << "box(lo=" << to_string(lo_) << ", hi=" << to_string(hi_) << ')';
  }
  if (!excluded_.empty()) {
    os << " minus {";
    for (std::size_t i = 0; i < excluded_.size(); ++i) {
      if (i) os << ", ";
      os << to_string(excluded_[i]);
    }
    os << '}';
  }
  return os.str();
}

}  // namespace orlicz
