#include "orlicz/phi_core.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

constexpr double kConvexitySlack = 1e-9;
constexpr double kBlowUpFloor = 1e6;
constexpr double kRatioSlack = 1e-9;

void admit_points(const PhiFamily& family, const SamplePlan& plan) {
  for (const SamplePoint& sp : plan.x_points) {
    if (!family.domain().admissible(sp.x)) {
      throw DomainError("plan point " + to_string(sp.x) + " is not admissible for " + family.name());
    }
  }
}

// Locates the finite/infinite transition inside (lo, hi] and returns the last finite value.
double last_finite_value(const PhiFamily& family, const Point& x, double lo, double hi) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (std::isinf(family(x, mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return family(x, lo);
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::strong: return "strong";
    case Classification::weak: return "weak";
    case Classification::not_phi: return "not_phi";
  }
  return "?";
}

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::vanishes_at_zero: return "vanishes_at_zero";
    case Axiom::increasing: return "increasing";
    case Axiom::finite_near_zero: return "finite_near_zero";
    case Axiom::blows_up: return "blows_up";
    case Axiom::almost_increasing_ratio: return "almost_increasing_ratio";
    case Axiom::convexity: return "convexity";
    case Axiom::continuity: return "continuity";
  }
  return "?";
}

std::string to_string(EquivalenceKind k) { return k == EquivalenceKind::valuewise ? "valuewise" : "argumentwise"; }

ClassifyResult classify(const PhiFamily& family, const SamplePlan& plan) {
  admit_points(family, plan);
  ClassifyResult result;
  const double a = family.ainc_constant();
  const auto& grid = plan.t_grid;
  std::vector<double> values(grid.size());
  for (const SamplePoint& sp : plan.x_points) {
    const Point& x = sp.x;
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = family(x, grid[i]);
    auto violate = [&](double t, Axiom axiom, double detail) { result.violations.push_back({x, t, axiom, detail}); };

    if (grid.front() == 0.0 && values.front() != 0.0) violate(0.0, Axiom::vanishes_at_zero, values.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (values[i] < values[i - 1]) {
        violate(grid[i], Axiom::increasing, values[i - 1] - values[i]);
        break;
      }
    }
    if (grid.size() > 1 && std::isinf(values[1])) violate(grid[1], Axiom::finite_near_zero, values[1]);
    if (!(values.back() >= kBlowUpFloor)) violate(grid.back(), Axiom::blows_up, values.back());

    // a-almost increasing φ(x,t)/t: compare every ratio with the running max to its left.
    double running_max = 0.0;
    double worst = 1.0;
    double worst_t = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(grid[i] > 0.0)) continue;
      const double r = values[i] / grid[i];
      if (std::isinf(r) && std::isinf(running_max)) continue;
      double need = 1.0;
      if (r == 0.0) {
        need = running_max > 0.0 ? kInfinity : 1.0;
      } else {
        need = running_max / r;
      }
      if (need > worst) {
        worst = need;
        worst_t = grid[i];
      }
      running_max = std::max(running_max, r);
    }
    result.ratio_constant = std::max(result.ratio_constant, worst);
    if (worst > a * (1.0 + kRatioSlack)) violate(worst_t, Axiom::almost_increasing_ratio, worst);

    // Strong-only requirements.
    bool convex = true;
    for (std::size_t k = 1; k < grid.size() && convex; k *= 2) {
      for (std::size_t i = 0; i + k < grid.size(); ++i) {
        const double rhs = 0.5 * (values[i] + values[i + k]);
        if (std::isinf(rhs)) continue;
        const double mid = family(x, 0.5 * (grid[i] + grid[i + k]));
        if (mid > rhs * (1.0 + kConvexitySlack) + 1e-300) {
          result.strong_failures.push_back({x, 0.5 * (grid[i] + grid[i + k]), Axiom::convexity, mid - rhs});
          convex = false;
          break;
        }
      }
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (std::isfinite(values[i - 1]) && std::isinf(values[i])) {
        const double edge = last_finite_value(family, x, grid[i - 1], grid[i]);
        if (edge < kBlowUpFloor) result.strong_failures.push_back({x, grid[i], Axiom::continuity, edge});
        break;
      }
    }
  }
  if (!result.violations.empty()) {
    result.classification = Classification::not_phi;
  } else if (result.strong_failures.empty()) {
    result.classification = Classification::strong;
  } else {
    result.classification = Classification::weak;
  }
  return result;
}

namespace {

// Worst almost-monotonicity constant of t ↦ φ(x,t)/t^e over the plan.
// increasing = true: r(s) <= A r(t) for s <= t; otherwise r(t) <= A r(s).
double growth_constant(const PhiFamily& family, double e, const SamplePlan& plan, bool increasing,
                       std::size_t& flagged) {
  double worst = 1.0;
  for (const SamplePoint& sp : plan.x_points) {
    double extreme = increasing ? 0.0 : kInfinity;  // running max (inc) or min (dec) to the left
    bool have = false;
    for (double t : plan.t_grid) {
      if (!(t > 0.0)) continue;
      const double r = family(sp.x, t) / std::pow(t, e);
      if (!have) {
        extreme = r;
        have = true;
        continue;
      }
      const double num = increasing ? extreme : r;
      const double den = increasing ? r : extreme;
      double need;
      if (std::isinf(num) && std::isinf(den)) {
        ++flagged;
        need = 1.0;
      } else if (den == 0.0) {
        need = num > 0.0 ? kInfinity : 1.0;
      } else {
        need = num / den;
      }
      worst = std::max(worst, need);
      extreme = increasing ? std::max(extreme, r) : std::min(extreme, r);
    }
  }
  return worst;
}

GrowthEstimate estimate(const PhiFamily& family, double e, const SamplePlan& plan, bool increasing) {
  if (!(e > 0.0)) throw UsageError("estimate_growth: exponents must be positive");
  admit_points(family, plan);
  GrowthEstimate g;
  g.exponent = e;
  g.constant = growth_constant(family, e, plan, increasing, g.flagged);
  g.refined_constant = growth_constant(family, e, refine_grids(plan), increasing, g.flagged);
  g.holds = std::isfinite(g.constant) && std::isfinite(g.refined_constant) && g.refined_constant <= 2.0 * g.constant;
  return g;
}

}  // namespace

GrowthEstimate estimate_ainc(const PhiFamily& family, double p, const SamplePlan& plan) {
  return estimate(family, p, plan, true);
}

GrowthEstimate estimate_adec(const PhiFamily& family, double q, const SamplePlan& plan) {
  return estimate(family, q, plan, false);
}

GrowthReport estimate_growth(const PhiFamily& family, double p, double q, const SamplePlan& plan) {
  return {estimate_ainc(family, p, plan), estimate_adec(family, q, plan)};
}

namespace {

double valuewise_need(double f, double g) {
  if (f == g) return 1.0;  // covers 0 = 0 and inf = inf
  if (f == 0.0 || g == 0.0 || std::isinf(f) || std::isinf(g)) return kInfinity;
  return std::max(f / g, g / f);
}

double argumentwise_need(const PhiFamily& phi, const PhiFamily& psi, const Point& x, double t, double cap) {
  const double target = psi(x, t);
  auto ok = [&](double c) { return phi(x, t / c) <= target && target <= phi(x, c * t); };
  if (ok(1.0)) return 1.0;
  if (!ok(cap)) return kInfinity;
  double lo = 1.0;
  double hi = cap;
  while (hi - lo > 1e-13 * hi) {
    const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

struct Sweep {
  double constant = 1.0;
  std::optional<EquivalenceViolation> worst;
};

Sweep sweep(const PhiFamily& phi, const PhiFamily& psi, EquivalenceKind kind, const SamplePlan& plan, double cap) {
  Sweep s;
  for (const SamplePoint& sp : plan.x_points) {
    for (double t : plan.t_grid) {
      const double need = kind == EquivalenceKind::valuewise ? valuewise_need(phi(sp.x, t), psi(sp.x, t))
                                                             : argumentwise_need(phi, psi, sp.x, t, cap);
      if (need > s.constant || (!s.worst && need == s.constant && need > 1.0)) {
        s.constant = need;
        s.worst = EquivalenceViolation{sp.x, t, need};
      }
    }
  }
  return s;
}

}  // namespace

EquivalenceResult check_equivalence(const PhiFamily& phi, const PhiFamily& psi, EquivalenceKind kind,
                                    const SamplePlan& plan, const EquivalenceOptions& options) {
  admit_points(phi, plan);
  admit_points(psi, plan);
  EquivalenceResult result;
  result.certificate.kind = kind;
  result.certificate.verified_on = plan.summary();
  const Sweep coarse = sweep(phi, psi, kind, plan, options.max_constant);
  result.certificate.constant = coarse.constant;
  result.refined_constant = coarse.constant;
  result.holds = std::isfinite(coarse.constant);
  if (!result.holds) {
    result.violation = coarse.worst;
    return result;
  }
  if (options.check_refinement) {
    const Sweep fine = sweep(phi, psi, kind, refine_grids(plan), options.max_constant);
    result.refined_constant = fine.constant;
    if (!(fine.constant <= options.growth_factor * coarse.constant)) {
      result.holds = false;
      result.violation = fine.worst;
    }
  }
  return result;
}

}  // namespace orlicz
