#include "orlicz/weight.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/format.hpp"
#include "orlicz/sample_plan.hpp"

namespace orlicz {

WeightFunction WeightFunction::zero() {
  WeightFunction w;
  w.fn_ = [](const Point&) { return 0.0; };
  w.description_ = "0";
  return w;
}

WeightFunction WeightFunction::indicator(double c, const SpatialDomain& domain) {
  if (!(c >= 0.0) || std::isinf(c)) throw UsageError("indicator weight: level must be finite and >= 0");
  if (!domain.bounded()) throw UsageError("indicator weight: χ_Ω is not integrable on an unbounded domain");
  if (c == 0.0) return zero();
  WeightFunction w;
  w.fn_ = [c](const Point&) { return c; };
  w.kind_ = WeightKind::indicator;
  w.level_ = c;
  w.sup_ = c;
  w.measure_ = domain.measure();
  w.l1_ = c * domain.measure();
  w.description_ = format_number(c) + "*chi_Omega";
  return w;
}

WeightFunction WeightFunction::envelope(double c, std::size_t dimension) {
  if (!(c >= 0.0) || std::isinf(c)) throw UsageError("envelope weight: level must be finite and >= 0");
  if (dimension == 0) throw UsageError("envelope weight: dimension must be positive");
  if (c == 0.0) return zero();
  const double decay = static_cast<double>(dimension) + 1.0;
  WeightFunction w;
  w.fn_ = [c, decay](const Point& x) {
    const double r = x.norm();
    return r <= 1.0 ? c : c * std::pow(r, -decay);
  };
  w.kind_ = WeightKind::envelope;
  w.level_ = c;
  w.dimension_ = dimension;
  w.sup_ = c;
  w.l1_ = c * decay * unit_ball_volume(dimension);
  w.description_ = format_number(c) + "*min{1,|x|^-" + format_number(decay) + "}";
  return w;
}

WeightFunction WeightFunction::custom(Fn fn, double sup_bound, double l1_bound, std::string description) {
  if (!fn) throw UsageError("custom weight: empty function");
  if (!(sup_bound >= 0.0) || std::isinf(sup_bound) || !(l1_bound >= 0.0) || std::isinf(l1_bound)) {
    throw UsageError("custom weight: bounds must be finite and >= 0");
  }
  WeightFunction w;
  w.fn_ = std::move(fn);
  w.kind_ = WeightKind::custom;
  w.sup_ = sup_bound;
  w.l1_ = l1_bound;
  w.description_ = std::move(description);
  return w;
}

WeightFunction WeightFunction::scaled(double k) const {
  if (!(k >= 0.0) || std::isinf(k)) throw UsageError("weight scale must be finite and >= 0");
  if (k == 0.0 || kind_ == WeightKind::zero) return zero();
  WeightFunction w = *this;
  w.fn_ = [base = fn_, k](const Point& x) { return k * base(x); };
  w.sup_ = k * sup_;
  w.l1_ = k * l1_;
  w.level_ = k * level_;
  if (kind_ == WeightKind::indicator) {
    w.description_ = format_number(w.level_) + "*chi_Omega";
  } else if (kind_ == WeightKind::envelope) {
    w.description_ = format_number(w.level_) + "*min{1,|x|^-" + format_number(dimension_ + 1.0) + "}";
  } else {
    w.description_ = format_number(k) + "*(" + description_ + ")";
  }
  return w;
}

WeightFunction WeightFunction::capped(double c) const {
  if (!(c >= 0.0) || std::isinf(c)) throw UsageError("weight cap must be finite and >= 0");
  if (c >= sup_) return *this;
  if (c == 0.0 || kind_ == WeightKind::zero) return zero();
  if (kind_ == WeightKind::indicator) {
    WeightFunction w = *this;
    w.fn_ = [c](const Point&) { return c; };
    w.level_ = c;
    w.sup_ = c;
    w.l1_ = c * measure_;
    w.description_ = format_number(c) + "*chi_Omega";
    return w;
  }
  WeightFunction w = *this;
  w.fn_ = [base = fn_, c](const Point& x) { return std::min(base(x), c); };
  w.kind_ = WeightKind::custom;
  w.sup_ = c;
  w.description_ = "min{" + description_ + "," + format_number(c) + "}";
  return w;
}

void Witness::validate(const SamplePlan* plan) const {
  if (!(beta > 0.0 && beta <= 1.0)) throw UsageError("witness: beta must lie in (0,1], got " + format_number(beta));
  if (!(sigma > 0.0) || std::isinf(sigma)) throw UsageError("witness: sigma must be finite and positive");
  if (!plan) return;
  for (const SamplePoint& sp : plan->x_points) {
    const double v = h(sp.x);
    if (!(v >= 0.0) || v > h.sup_bound() * (1.0 + 1e-12)) {
      throw UsageError("witness: h(" + to_string(sp.x) + ") = " + format_number(v) + " outside [0, " +
                       format_number(h.sup_bound()) + "]");
    }
  }
}

std::string Witness::describe() const {
  return "beta=" + format_number(beta) + " h=" + h.describe() + " sigma=" + format_number(sigma);
}

}  // namespace orlicz
