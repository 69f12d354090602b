#include "orlicz/inversion.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

void check_options(const InverseOptions& o) {
  if (!(o.abs_tol > 0.0) || !(o.rel_tol > 0.0) || !(o.bracket_cap > 1.0)) {
    throw UsageError("inverse: tolerances must be positive and the bracket cap above 1");
  }
}

void check_point(const PhiFamily& family, const Point& x) {
  if (!family.domain().admissible(x)) {
    throw DomainError("inverse: " + to_string(x) + " is not an admissible point of " + family.domain().describe());
  }
}

// Bisection on a predicate that is false below some threshold and true above;
// returns the smallest sampled true point. Midpoints are geometric while the
// bracket spans more than a factor 4.
template <typename Pred>
double bisect_threshold(Pred&& pred, double lo, double hi, const InverseOptions& o) {
  for (int iter = 0; iter < 4096; ++iter) {
    const double width_tol = std::max(o.rel_tol * hi, o.abs_tol * o.rel_tol);
    if (hi - lo <= width_tol) break;
    const double mid = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double inverse_impl(const PhiFamily& family, const Point& x, double tau, const InverseOptions& o) {
  if (tau <= 0.0) return 0.0;
  auto reached = [&](double t) { return family(x, t) >= tau; };
  double lo = 0.0;
  double hi = 1.0;
  if (reached(1.0)) {
    lo = 0.5;
    while (reached(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo == 0.0) return 0.0;
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    while (!reached(hi)) {
      if (hi >= o.bracket_cap) return kInfinity;
      lo = hi;
      hi = std::min(2.0 * hi, o.bracket_cap);
    }
  }
  return bisect_threshold(reached, lo, hi, o);
}

}  // namespace

InverseResult left_inverse(const InverseQuery& q) {
  check_options(q.options);
  check_point(q.family, q.x);
  if (q.tau.is_infinite()) return {q.options.bracket_cap, true};
  const double t = inverse_impl(q.family, q.x, q.tau.value(), q.options);
  if (std::isinf(t)) {
    throw UnboundedError("left_inverse: φ(x,t) < τ for all t below the bracket cap at x = " + to_string(q.x));
  }
  return {t, false};
}

double left_inverse(const PhiFamily& family, const Point& x, double tau, const InverseOptions& options) {
  return left_inverse(InverseQuery{family, x, Extended(tau), options}).value;
}

double left_inverse_or_inf(const PhiFamily& family, const Point& x, double tau, const InverseOptions& options) {
  if (std::isinf(tau)) return kInfinity;
  return inverse_impl(family, x, tau, options);
}

ZeroPlateau zero_plateau(const PhiFamily& family, const Point& x, const InverseOptions& o) {
  check_options(o);
  check_point(family, x);
  auto positive = [&](double t) { return family(x, t) > 0.0; };
  if (positive(o.abs_tol)) return {0.0};
  double lo = o.abs_tol;
  double hi = 1.0;
  while (!positive(hi)) {
    if (hi >= o.bracket_cap) throw UnboundedError("zero_plateau: φ(x,·) vanishes up to the bracket cap");
    lo = hi;
    hi = std::min(2.0 * hi, o.bracket_cap);
  }
  // The plateau end is the last zero: step back to the zero side of the bracket.
  double lo_final = lo;
  double hi_final = hi;
  for (int iter = 0; iter < 4096 && hi_final - lo_final > o.rel_tol * hi_final; ++iter) {
    const double mid = 0.5 * (lo_final + hi_final);
    if (!(mid > lo_final && mid < hi_final)) break;
    if (positive(mid)) {
      hi_final = mid;
    } else {
      lo_final = mid;
    }
  }
  return {lo_final};
}

InverseIdentityReport verify_inverse_identities(const PhiFamily& family, const SamplePlan& plan,
                                                const InverseOptions& o) {
  check_options(o);
  InverseIdentityReport report;
  auto note = [&report](double residual, const Point& x, double v, double& slot) {
    if (residual > slot) {
      slot = residual;
      report.worst_x = x;
      report.worst_value = v;
    }
  };
  for (const SamplePoint& sp : plan.x_points) {
    const Point& x = sp.x;
    check_point(family, x);
    for (double tau : plan.tau_grid) {
      if (!(tau > 0.0)) continue;
      const double t = inverse_impl(family, x, tau, o);
      if (std::isinf(t)) {
        ++report.skipped;
        continue;
      }
      note(std::abs(family(x, t) - tau) / tau, x, tau, report.forward_residual);
      ++report.forward_checked;
    }
    const double t0 = zero_plateau(family, x, o).t0;
    for (double t : plan.t_grid) {
      if (!(t > t0 * (1.0 + o.rel_tol))) {
        ++report.skipped;
        continue;
      }
      const double v = family(x, t);
      if (!(v > 0.0) || std::isinf(v)) {
        ++report.skipped;
        continue;
      }
      const double s = inverse_impl(family, x, v, o);
      note(std::abs(s - t) / t, x, t, report.backward_residual);
      ++report.backward_checked;
    }
  }
  return report;
}

InverseAdecReport inverse_adec1_check(const PhiFamily& family, const SamplePlan& plan, const InverseOptions& o) {
  check_options(o);
  InverseAdecReport report;
  const double a = family.ainc_constant();
  for (const SamplePoint& sp : plan.x_points) {
    check_point(family, sp.x);
    double running_min = kInfinity;
    for (double tau : plan.tau_grid) {
      if (!(tau > 0.0)) continue;
      const double inv = inverse_impl(family, sp.x, tau, o);
      if (std::isinf(inv)) continue;
      const double g = inv / tau;
      running_min = std::min(running_min, g);
      if (running_min > 0.0) report.constant = std::max(report.constant, g / running_min);
      const double inv2 = inverse_impl(family, sp.x, 2.0 * tau, o);
      if (inv > 0.0 && std::isfinite(inv2)) {
        report.doubling_ratio = std::max(report.doubling_ratio, inv2 / (2.0 * inv));
      }
    }
  }
  report.doubling_holds = report.doubling_ratio <= a * (1.0 + 1e-9);
  return report;
}

}  // namespace orlicz
