#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

/// A point of ℝⁿ.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

  [[nodiscard]] std::size_t dimension() const { return coords_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
  [[nodiscard]] std::span<const double> coords() const { return coords_; }
  [[nodiscard]] double norm() const;
  [[nodiscard]] double distance(const Point& other) const;

  /// this + scale · e_axis
  [[nodiscard]] Point shifted(std::size_t axis, double offset) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

std::string to_string(const Point& p);

enum class Shape { box, ball };

/// Ω: an open axis-aligned box (bounds may be infinite) or an open ball,
/// with a finite list of excluded points standing in for a null set.
class SpatialDomain {
 public:
  static SpatialDomain ball(Point center, double radius, std::vector<Point> excluded = {});
  static SpatialDomain box(Point lo, Point hi, std::vector<Point> excluded = {});
  static SpatialDomain whole_space(std::size_t dimension, std::vector<Point> excluded = {});

  [[nodiscard]] Shape shape() const { return shape_; }
  [[nodiscard]] std::size_t dimension() const { return center_.dimension(); }
  [[nodiscard]] bool bounded() const { return bounded_; }
  /// Lebesgue volume; +inf when unbounded.
  [[nodiscard]] double measure() const { return measure_; }
  [[nodiscard]] const Point& center() const { return center_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] const Point& lo() const { return lo_; }
  [[nodiscard]] const Point& hi() const { return hi_; }
  [[nodiscard]] const std::vector<Point>& excluded_points() const { return excluded_; }

  /// Half-extent along axis 0 (the radius for a ball); +inf for unbounded axes.
  [[nodiscard]] double half_width(std::size_t axis = 0) const;
  /// Finite length scale used to place sample points.
  [[nodiscard]] double scale() const;

  /// Interior membership of the shape, ignoring exclusions.
  [[nodiscard]] bool contains(const Point& x) const;
  [[nodiscard]] bool is_excluded(const Point& x) const;
  [[nodiscard]] bool admissible(const Point& x) const { return contains(x) && !is_excluded(x); }

  [[nodiscard]] std::string describe() const;

 private:
  SpatialDomain() = default;
  void validate_exclusions() const;

  Shape shape_ = Shape::box;
  Point center_;
  double radius_ = 0.0;
  Point lo_, hi_;
  bool bounded_ = true;
  double measure_ = 0.0;
  std::vector<Point> excluded_;
};

/// Volume of the unit ball in ℝⁿ.
double unit_ball_volume(std::size_t n);

}  // namespace orlicz
