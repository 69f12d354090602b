#pragma once

#include <string>
#include <vector>

#include "orlicz/phi_family.hpp"

namespace orlicz::gallery {

/// φ(t) = t^p, independent of x.
PhiFamily orlicz_power(double p, SpatialDomain domain);

/// φ(x,t) = t^{p(x)} with p(x) = mid + half·clamp(x₁/R, -1, 1), a Lipschitz
/// exponent spanning [p_min, p_max] across the domain (R its half-width, or 1
/// when unbounded).
PhiFamily variable_exponent(double p_min, double p_max, SpatialDomain domain);

enum class Weight { linear, radial, constant };

Weight parse_weight(const std::string& name);
std::string to_string(Weight w);

/// φ(x,t) = t^p + w(x) t^q with w(x) ∈ [0, w_max]:
///   linear:   w_max·(1 + clamp(x₁/R))/2
///   radial:   w_max·min{1, |x - c|/R}
///   constant: w_max
PhiFamily double_phase(double p, double q, Weight weight, double w_max, SpatialDomain domain);

/// φ(x,t) = t²/|x|; the domain must exclude the origin if it contains it.
PhiFamily punctured_example(SpatialDomain domain);

/// φ(t) = 0 for t <= threshold, +inf beyond (the L∞-type weak Φ-function).
PhiFamily step(double threshold, SpatialDomain domain);

/// Punctured unit ball B(0,1) \ {0} in ℝⁿ.
SpatialDomain punctured_unit_ball(std::size_t n);
SpatialDomain unit_ball(std::size_t n);

struct Entry {
  std::string name;
  std::string formula;
  std::string parameters;
};

/// The families the CLI can build by name.
const std::vector<Entry>& entries();

}  // namespace orlicz::gallery
