#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "orlicz/gallery.hpp"
#include "orlicz/phi_family.hpp"
#include "orlicz/sample_plan.hpp"

namespace orlicz::test {

inline PhiFamily scalar_family(const std::string& name, std::function<double(double)> f, SpatialDomain domain,
                               Strength strength = Strength::strong, double a = 1.0) {
  PhiTraits traits;
  traits.strength = strength;
  traits.ainc_constant = a;
  return PhiFamily(
      name, [f](const Point&, double t) { return Extended(f(t)); }, std::move(domain), traits);
}

inline SpatialDomain interval(double lo = 0.0, double hi = 1.0) { return SpatialDomain::box(Point{lo}, Point{hi}); }

/// A smaller plan for the costlier conjugate sweeps.
inline PlanOptions reduced_plan(int points = 81, int depth = 6) {
  PlanOptions o;
  o.t_grid = GridSpec{1e-4, 1e4, points};
  o.tau_grid = GridSpec{1e-4, 1e4, points};
  o.refinement_depth = depth;
  return o;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

}  // namespace orlicz::test
