#include "orlicz/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/format.hpp"

namespace orlicz::gallery {

namespace {

double window(const SpatialDomain& domain) {
  const double hw = domain.half_width(0);
  return std::isfinite(hw) ? hw : 1.0;
}

double clamped_coordinate(const SpatialDomain& domain, const Point& x) {
  return std::clamp((x[0] - domain.center()[0]) / window(domain), -1.0, 1.0);
}

}  // namespace

PhiFamily orlicz_power(double p, SpatialDomain domain) {
  if (!(p >= 1.0)) throw UsageError("orlicz_power: p must be >= 1");
  PhiTraits traits;
  traits.strength = Strength::strong;
  traits.ainc_p = GrowthBound{p, 1.0};
  traits.adec_q = GrowthBound{p, 1.0};
  return PhiFamily(
      "orlicz_power(p=" + format_number(p) + ")",
      [p](const Point&, double t) { return Extended(std::pow(t, p)); }, std::move(domain), traits);
}

PhiFamily variable_exponent(double p_min, double p_max, SpatialDomain domain) {
  if (!(p_min >= 1.0) || !(p_max >= p_min)) throw UsageError("variable_exponent: need 1 <= p_min <= p_max");
  const double mid = 0.5 * (p_min + p_max);
  const double half = 0.5 * (p_max - p_min);
  PhiTraits traits;
  traits.strength = Strength::strong;
  traits.ainc_p = GrowthBound{p_min, 1.0};
  traits.adec_q = GrowthBound{p_max, 1.0};
  const SpatialDomain d = domain;
  return PhiFamily(
      "variable_exponent(p_min=" + format_number(p_min) + ", p_max=" + format_number(p_max) + ")",
      [d, mid, half](const Point& x, double t) {
        return Extended(std::pow(t, mid + half * clamped_coordinate(d, x)));
      },
      std::move(domain), traits);
}

Weight parse_weight(const std::string& name) {
  if (name == "linear") return Weight::linear;
  if (name == "radial") return Weight::radial;
  if (name == "constant") return Weight::constant;
  throw UsageError("unknown double-phase weight '" + name + "' (linear|radial|constant)");
}

std::string to_string(Weight w) {
  switch (w) {
    case Weight::linear: return "linear";
    case Weight::radial: return "radial";
    case Weight::constant: return "constant";
  }
  return "?";
}

PhiFamily double_phase(double p, double q, Weight weight, double w_max, SpatialDomain domain) {
  if (!(p >= 1.0) || !(q >= p)) throw UsageError("double_phase: need 1 <= p <= q");
  if (!(w_max >= 0.0) || !std::isfinite(w_max)) throw UsageError("double_phase: weight bound must be finite and >= 0");
  PhiTraits traits;
  traits.strength = Strength::strong;
  traits.ainc_p = GrowthBound{p, 1.0};
  traits.adec_q = GrowthBound{q, 1.0};
  const SpatialDomain d = domain;
  auto w = [d, weight, w_max](const Point& x) {
    switch (weight) {
      case Weight::linear: return w_max * 0.5 * (1.0 + clamped_coordinate(d, x));
      case Weight::radial: return w_max * std::min(1.0, x.distance(d.center()) / window(d));
      case Weight::constant: return w_max;
    }
    return 0.0;
  };
  return PhiFamily(
      "double_phase(p=" + format_number(p) + ", q=" + format_number(q) + ", weight=" + to_string(weight) + ")",
      [w, p, q](const Point& x, double t) { return Extended(std::pow(t, p) + w(x) * std::pow(t, q)); },
      std::move(domain), traits);
}

PhiFamily punctured_example(SpatialDomain domain) {
  const Point origin(std::vector<double>(domain.dimension(), 0.0));
  if (domain.contains(origin) && !domain.is_excluded(origin)) {
    throw UsageError("punctured_example: the origin must be excluded from the domain");
  }
  PhiTraits traits;
  traits.strength = Strength::strong;
  traits.ainc_p = GrowthBound{2.0, 1.0};
  traits.adec_q = GrowthBound{2.0, 1.0};
  return PhiFamily(
      "example_1_1", [](const Point& x, double t) { return Extended(t * t / x.norm()); }, std::move(domain), traits);
}

PhiFamily step(double threshold, SpatialDomain domain) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) throw UsageError("step: threshold must be finite and > 0");
  PhiTraits traits;
  traits.strength = Strength::weak;
  return PhiFamily(
      "step(threshold=" + format_number(threshold) + ")",
      [threshold](const Point&, double t) { return t <= threshold ? Extended::zero() : Extended::infinity(); },
      std::move(domain), traits);
}

SpatialDomain unit_ball(std::size_t n) { return SpatialDomain::ball(Point(std::vector<double>(n, 0.0)), 1.0); }

SpatialDomain punctured_unit_ball(std::size_t n) {
  const Point origin(std::vector<double>(n, 0.0));
  return SpatialDomain::ball(origin, 1.0, {origin});
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {"orlicz_power", "t^p", "p >= 1"},
      {"variable_exponent", "t^{p(x)}, p Lipschitz in [p_min, p_max]", "p_min, p_max >= 1"},
      {"double_phase", "t^p + w(x) t^q", "p <= q, weight = linear|radial|constant, w_max >= 0"},
      {"example_1_1", "t^2 / |x| on a domain punctured at 0", "none"},
      {"step", "0 for t <= threshold, +inf beyond", "threshold > 0"},
  };
  return list;
}

}  // namespace orlicz::gallery
