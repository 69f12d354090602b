#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

#include "orlicz/errors.hpp"

namespace orlicz {

/// A value in [0, +inf]: the codomain of every Φ-function.
///
/// Backed by a double so +inf compares above every finite value and
/// absorbs finite addends. Multiplication by a scalar follows the measure
/// theory convention 0 · inf = 0.
class Extended {
 public:
  constexpr Extended() = default;

  explicit Extended(double v) : value_(v) {
    if (std::isnan(v) || v < 0.0) {
      throw DomainError("Extended: value must lie in [0, +inf]");
    }
    if (v == 0.0) value_ = 0.0;  // drop the sign of -0.0
  }

  static constexpr Extended infinity() {
    Extended e;
    e.value_ = std::numeric_limits<double>::infinity();
    return e;
  }
  static constexpr Extended zero() { return Extended{}; }

  [[nodiscard]] constexpr double value() const { return value_; }
  [[nodiscard]] constexpr bool is_finite() const {
    return value_ != std::numeric_limits<double>::infinity();
  }
  [[nodiscard]] constexpr bool is_infinite() const { return !is_finite(); }

  friend constexpr bool operator==(Extended, Extended) = default;
  friend constexpr std::partial_ordering operator<=>(Extended a, Extended b) {
    return a.value_ <=> b.value_;
  }

  friend Extended operator+(Extended a, Extended b) {
    return Extended(a.value_ + b.value_);
  }

  /// Scalar multiple with 0 · inf = 0; the scalar must be finite and >= 0.
  friend Extended operator*(double scalar, Extended e) {
    if (!(scalar >= 0.0) || std::isinf(scalar)) {
      throw DomainError("Extended: scalar must be finite and nonnegative");
    }
    if (scalar == 0.0) return Extended{};
    return Extended(scalar * e.value_);
  }
  friend Extended operator*(Extended e, double scalar) { return scalar * e; }

  friend std::ostream& operator<<(std::ostream& os, Extended e) {
    if (e.is_infinite()) return os << "+inf";
    return os << e.value_;
  }

 private:
  double value_ = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace orlicz
