#include "orlicz/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "orlicz/errors.hpp"
#include "orlicz/format.hpp"
#include "orlicz/phi_core.hpp"

namespace orlicz {

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::A0: return "A0";
    case ConditionId::A1: return "A1";
    case ConditionId::A2new: return "A2new";
    case ConditionId::A2old: return "A2old";
    case ConditionId::A2phi: return "A2phi";
    case ConditionId::A2max: return "A2max";
    case ConditionId::aIncP: return "aIncP";
    case ConditionId::aDecQ: return "aDecQ";
  }
  return "?";
}

std::string to_string(Verdict v) { return v == Verdict::holds_on_samples ? "holds_on_samples" : "violated"; }

ConditionId parse_condition(const std::string& name) {
  for (ConditionId id : {ConditionId::A0, ConditionId::A1, ConditionId::A2new, ConditionId::A2old, ConditionId::A2phi,
                         ConditionId::A2max, ConditionId::aIncP, ConditionId::aDecQ}) {
    if (to_string(id) == name) return id;
  }
  throw UsageError("unknown condition '" + name + "'");
}

Verdict parse_verdict(const std::string& name) {
  if (name == "holds" || name == "holds_on_samples") return Verdict::holds_on_samples;
  if (name == "violated") return Verdict::violated;
  throw UsageError("unknown verdict '" + name + "' (expected holds or violated)");
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::inverse_shifted: return "1:A2new";
    case Formulation::phi_form: return "2:A2phi";
    case Formulation::inverse_max: return "3:A2max";
    case Formulation::old_half: return "4:A2old(|h|<=sigma/2)";
    case Formulation::old_with_A0: return "5:A2old+A0";
    case Formulation::A0: return "A0";
  }
  return "?";
}

ConditionId condition_of(Formulation f) {
  switch (f) {
    case Formulation::inverse_shifted: return ConditionId::A2new;
    case Formulation::phi_form: return ConditionId::A2phi;
    case Formulation::inverse_max: return ConditionId::A2max;
    case Formulation::old_half:
    case Formulation::old_with_A0: return ConditionId::A2old;
    case Formulation::A0: return ConditionId::A0;
  }
  return ConditionId::A0;
}

namespace {

/// Memoized φ⁻¹ at registered points.
class InverseCache {
 public:
  InverseCache(const PhiFamily& family, InverseOptions options) : family_(family), options_(options) {}

  std::size_t add(const Point& p) {
    auto [it, inserted] = index_.try_emplace(std::vector<double>(p.coords().begin(), p.coords().end()), points_.size());
    if (inserted) {
      points_.push_back(p);
      memo_.emplace_back();
    }
    return it->second;
  }

  double operator()(std::size_t i, double tau) {
    auto& m = memo_[i];
    auto it = m.find(tau);
    if (it != m.end()) return it->second;
    const double v = left_inverse_or_inf(family_, points_[i], tau, options_);
    m.emplace(tau, v);
    return v;
  }

  [[nodiscard]] const Point& point(std::size_t i) const { return points_[i]; }

 private:
  const PhiFamily& family_;
  InverseOptions options_;
  std::vector<Point> points_;
  std::vector<std::unordered_map<double, double>> memo_;
  std::map<std::vector<double>, std::size_t> index_;
};

enum class Form { shifted, restricted, clamped };

Form form_of(ConditionId id) {
  switch (id) {
    case ConditionId::A2new: return Form::shifted;
    case ConditionId::A2old: return Form::restricted;
    case ConditionId::A2max: return Form::clamped;
    default: throw UsageError("not an inverse-form condition: " + to_string(id));
  }
}

/// Calls f(arg_x, arg_y) for every τ-tuple of a pair with h(x)+h(y) = H.
/// `taus` is the τ window [0,σ] (σ included).
template <class F>
void for_each_arg(Form form, double H, double sigma, const std::vector<double>& taus, F&& f) {
  switch (form) {
    case Form::shifted:
      for (double tau : taus) f(tau, tau + H);
      break;
    case Form::restricted:
      if (H > sigma) return;
      f(H, H);
      for (double tau : taus) {
        if (tau > H) f(tau, tau);
      }
      break;
    case Form::clamped:
      f(H, H);
      for (double tau : taus) {
        if (tau > H) f(tau, tau);
      }
      break;
  }
}

/// rhs/lhs with the conventions of a ratio bound β·lhs <= rhs.
double ratio_of(double lhs, double rhs) {
  if (lhs == 0.0) return kInfinity;
  if (std::isinf(lhs)) return std::isinf(rhs) ? 1.0 : 0.0;
  return rhs / lhs;
}

bool violates(double beta, double lhs, double rhs, double slack) { return beta * lhs > rhs * (1.0 + slack); }

/// Excess β·lhs/rhs used to rank violations.
double excess_of(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : kInfinity; }

int max_depth(const SamplePlan& plan) {
  int d = 0;
  for (const SamplePoint& sp : plan.x_points) d = std::max(d, sp.depth);
  return d;
}

std::vector<DepthSample> cumulative_profile(const std::vector<double>& per_depth) {
  std::vector<DepthSample> out;
  double running = kInfinity;
  for (std::size_t d = 0; d < per_depth.size(); ++d) {
    running = std::min(running, per_depth[d]);
    out.push_back({static_cast<int>(d), running});
  }
  return out;
}

/// The last `window` steps of the profile each shrink by at least `shrink`.
bool diverges(const std::vector<DepthSample>& profile, int window, double shrink) {
  const int n = static_cast<int>(profile.size());
  if (window <= 0 || n <= window) return false;
  for (int k = n - window; k < n; ++k) {
    const double prev = profile[k - 1].value;
    const double cur = profile[k].value;
    if (!std::isfinite(prev) || !(cur <= (1.0 - shrink) * prev)) return false;
  }
  return true;
}

/// Profile value `window` depths before the end: the constant the deepest samples refute.
double refuted_constant(const std::vector<DepthSample>& profile, int window) {
  const int n = static_cast<int>(profile.size());
  const int k = std::max(0, n - 1 - window);
  const double v = profile[k].value;
  return std::isfinite(v) ? std::min(v, 1.0) : 1.0;
}

struct Tuple {
  std::size_t i = 0, j = 0;
  double arg = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  int depth = 0;
};

ConditionReport base_report(ConditionId id, const SamplePlan& plan, std::string mode) {
  ConditionReport r;
  r.id = id;
  r.mode = std::move(mode);
  r.plan_summary = plan.summary();
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// (A0), (A1)

ConditionReport check_A0(const PhiFamily& family, const SamplePlan& plan, const ConditionOptions& options) {
  ConditionReport r = base_report(ConditionId::A0, plan, "estimate");
  if (plan.x_points.empty()) throw UsageError("check_A0: empty plan");
  const int D = max_depth(plan);
  std::vector<double> per_depth(static_cast<std::size_t>(D) + 1, kInfinity);
  std::vector<std::size_t> arg_per_depth(per_depth.size(), 0);
  std::vector<double> values;
  double m = kInfinity, M = 0.0;
  for (std::size_t k = 0; k < plan.x_points.size(); ++k) {
    const SamplePoint& sp = plan.x_points[k];
    const double v = left_inverse_or_inf(family, sp.x, 1.0, options.inverse);
    values.push_back(v);
    ++r.tuples_checked;
    m = std::min(m, v);
    M = std::max(M, v);
    const double b = std::min(v, std::isinf(v) ? 0.0 : 1.0 / v);
    if (b < per_depth[sp.depth]) {
      per_depth[sp.depth] = b;
      arg_per_depth[sp.depth] = k;
    }
  }
  r.inverse_at_one_min = m;
  r.inverse_at_one_max = M;
  r.depth_profile = cumulative_profile(per_depth);
  const double best = std::min({1.0, m, std::isinf(M) ? 0.0 : 1.0 / M});
  r.best_beta = best;

  const bool degenerate = !(m > 0.0) || std::isinf(M);
  if (degenerate || diverges(r.depth_profile, options.divergence_window, options.divergence_shrink)) {
    r.verdict = Verdict::violated;
    std::size_t arg = 0;
    int depth = 0;
    double lowest = kInfinity;
    for (std::size_t d = 0; d < per_depth.size(); ++d) {
      if (per_depth[d] <= lowest) {
        lowest = per_depth[d];
        arg = arg_per_depth[d];
        depth = static_cast<int>(d);
      }
    }
    const double candidate = degenerate ? 1.0 : refuted_constant(r.depth_profile, options.divergence_window);
    const double v = values[arg];
    Violation viol;
    viol.x = plan.x_points[arg].x;
    viol.y = viol.x;
    viol.arg = 1.0;
    viol.depth = depth;
    if (v < 1.0) {
      viol.lhs = candidate;  // β <= φ⁻¹(x,1)
      viol.rhs = v;
    } else {
      viol.lhs = v;  // φ⁻¹(x,1) <= 1/β
      viol.rhs = 1.0 / candidate;
    }
    viol.residual = viol.lhs - viol.rhs;
    r.violation = viol;
  }
  return r;
}

ConditionReport check_A1(const PhiFamily& family, const SamplePlan& plan, const ConditionOptions& options) {
  ConditionReport r = base_report(ConditionId::A1, plan, "estimate");
  if (plan.ball_family.empty()) throw UsageError("check_A1: empty ball family");
  const SpatialDomain& domain = family.domain();
  InverseCache cache(family, options.inverse);
  const int D = plan.refinement_depth;
  std::vector<double> per_depth(static_cast<std::size_t>(D) + 1, kInfinity);
  std::vector<Tuple> arg_per_depth(per_depth.size());
  std::size_t skipped = 0;

  for (const Ball& ball : plan.ball_family) {
    if (!(ball.measure > 0.0 && ball.measure <= 1.0)) throw UsageError("check_A1: ball with |B| outside (0,1]");
    std::vector<std::size_t> idx;
    std::vector<int> depth;
    for (int d = 0; d <= D; ++d) {
      for (const Point& p : ball_points(domain, ball, d)) {
        idx.push_back(cache.add(p));
        depth.push_back(d);
      }
    }
    if (idx.size() < 2) {
      ++skipped;
      continue;
    }
    const std::vector<double> taus = grid_window(plan.tau_grid, 1.0, 1.0 / ball.measure);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b < idx.size(); ++b) {
        if (a == b) continue;
        const int d = std::max(depth[a], depth[b]);
        for (double tau : taus) {
          const double lhs = cache(idx[a], tau);
          const double rhs = cache(idx[b], tau);
          ++r.tuples_checked;
          const double ratio = ratio_of(lhs, rhs);
          if (ratio < per_depth[d]) {
            per_depth[d] = ratio;
            arg_per_depth[d] = {idx[a], idx[b], tau, lhs, rhs, d};
          }
        }
      }
    }
  }
  if (skipped) {
    r.warnings.push_back(std::to_string(skipped) + " ball(s) skipped: fewer than two sample points in Ω∩B");
  }
  r.depth_profile = cumulative_profile(per_depth);
  const double best = r.depth_profile.back().value;
  r.best_beta = std::min(1.0, best);
  if (!(best > 0.0) || diverges(r.depth_profile, options.divergence_window, options.divergence_shrink)) {
    r.verdict = Verdict::violated;
    std::size_t arg = 0;
    for (std::size_t d = 0; d < per_depth.size(); ++d) {
      if (per_depth[d] <= per_depth[arg]) arg = d;
    }
    const Tuple* worst = &arg_per_depth[arg];
    const double candidate = best > 0.0 ? refuted_constant(r.depth_profile, options.divergence_window) : 1.0;
    Violation viol;
    viol.x = cache.point(worst->i);
    viol.y = cache.point(worst->j);
    viol.arg = worst->arg;
    viol.lhs = candidate * worst->lhs;
    viol.rhs = worst->rhs;
    viol.residual = viol.lhs - viol.rhs;
    viol.depth = worst->depth;
    r.violation = viol;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Inverse forms

namespace {

ConditionReport inverse_form_check(ConditionId id, const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                                   const ConditionOptions& options) {
  w.validate(&plan);
  const Form form = form_of(id);
  ConditionReport r = base_report(id, plan, "given");
  r.witness = w;
  InverseCache cache(family, options.inverse);
  const std::size_t n = plan.x_points.size();
  std::vector<std::size_t> idx(n);
  std::vector<double> hv(n);
  for (std::size_t k = 0; k < n; ++k) {
    idx[k] = cache.add(plan.x_points[k].x);
    hv[k] = w.h(plan.x_points[k].x);
  }
  const std::vector<double> taus = grid_window(plan.tau_grid, 0.0, w.sigma);
  std::vector<double> per_depth(static_cast<std::size_t>(max_depth(plan)) + 1, kInfinity);
  std::optional<Tuple> worst;
  double worst_excess = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double H = hv[i] + hv[j];
      const int d = std::max(plan.x_points[i].depth, plan.x_points[j].depth);
      for_each_arg(form, H, w.sigma, taus, [&](double ax, double ay) {
        const double lhs = cache(idx[i], ax);
        const double rhs = cache(idx[j], ay);
        ++r.tuples_checked;
        per_depth[d] = std::min(per_depth[d], ratio_of(lhs, rhs));
        if (violates(w.beta, lhs, rhs, options.slack)) {
          const double e = excess_of(w.beta * lhs, rhs);
          if (!worst || e > worst_excess) {
            worst_excess = e;
            worst = Tuple{i, j, ax, lhs, rhs, d};
          }
        }
      });
    }
  }
  r.vacuous = r.tuples_checked == 0;
  r.depth_profile = cumulative_profile(per_depth);
  r.best_beta = std::min(1.0, r.depth_profile.back().value);
  if (worst) {
    r.verdict = Verdict::violated;
    Violation v;
    v.x = plan.x_points[worst->i].x;
    v.y = plan.x_points[worst->j].x;
    v.arg = worst->arg;
    v.lhs = w.beta * worst->lhs;
    v.rhs = worst->rhs;
    v.residual = v.lhs - v.rhs;
    v.depth = worst->depth;
    r.violation = v;
  }
  return r;
}

/// Tables for the φ-form: φ(y,t) on the t-grid and the admissible prefix length per point.
struct PhiFormTables {
  std::vector<std::vector<double>> phi;  // [point][t]
  std::vector<std::size_t> admissible;   // number of leading t with φ(y,t) <= σ
};

PhiFormTables phi_form_tables(const PhiFamily& family, const std::vector<Point>& pts, const std::vector<double>& ts,
                              double sigma) {
  PhiFormTables tab;
  for (const Point& p : pts) {
    std::vector<double> row(ts.size());
    std::size_t count = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      row[k] = family(p, ts[k]);
      if (row[k] <= sigma) count = k + 1;
    }
    tab.phi.push_back(std::move(row));
    tab.admissible.push_back(count);
  }
  return tab;
}

std::vector<std::vector<double>> scaled_values(const PhiFamily& family, const std::vector<Point>& pts,
                                               const std::vector<double>& ts, double beta) {
  std::vector<std::vector<double>> out;
  out.reserve(pts.size());
  for (const Point& p : pts) {
    std::vector<double> row(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) row[k] = family(p, beta * ts[k]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ConditionReport check_A2_new(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options) {
  return inverse_form_check(ConditionId::A2new, family, w, plan, options);
}

ConditionReport check_A2_old(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options) {
  return inverse_form_check(ConditionId::A2old, family, w, plan, options);
}

ConditionReport check_A2_max(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options) {
  return inverse_form_check(ConditionId::A2max, family, w, plan, options);
}

ConditionReport check_A2_phi(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options) {
  w.validate(&plan);
  ConditionReport r = base_report(ConditionId::A2phi, plan, "given");
  r.witness = w;
  const std::size_t n = plan.x_points.size();
  std::vector<Point> pts;
  std::vector<double> hv;
  for (const SamplePoint& sp : plan.x_points) {
    pts.push_back(sp.x);
    hv.push_back(w.h(sp.x));
  }
  const std::vector<double>& ts = plan.t_grid;
  const PhiFormTables tab = phi_form_tables(family, pts, ts, w.sigma);

  // Exhaustive pass at the given β, recording the worst tuple.
  const auto lhs = scaled_values(family, pts, ts, w.beta);
  std::optional<Tuple> worst;
  double worst_excess = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double H = hv[i] + hv[j];
      for (std::size_t k = 0; k < tab.admissible[j]; ++k) {
        ++r.tuples_checked;
        const double rhs = tab.phi[j][k] + H;
        if (lhs[i][k] > rhs * (1.0 + options.slack)) {
          const double e = excess_of(lhs[i][k], rhs);
          if (!worst || e > worst_excess) {
            worst_excess = e;
            worst = Tuple{i, j, ts[k], lhs[i][k], rhs,
                          std::max(plan.x_points[i].depth, plan.x_points[j].depth)};
          }
        }
      }
    }
  }
  r.vacuous = r.tuples_checked == 0;

  auto passes = [&](double beta) {
    const auto l = scaled_values(family, pts, ts, beta);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double H = hv[i] + hv[j];
        for (std::size_t k = 0; k < tab.admissible[j]; ++k) {
          if (l[i][k] > (tab.phi[j][k] + H) * (1.0 + options.slack)) return false;
        }
      }
    }
    return true;
  };
  if (!options.phi_form_best_beta) {
    r.best_beta = worst ? 0.0 : w.beta;
    if (worst) r.warnings.push_back("best beta not computed");
  } else if (!worst && w.beta >= 1.0) {
    r.best_beta = 1.0;
  } else if (passes(1.0)) {
    r.best_beta = 1.0;
  } else {
    // Geometric bisection on β ∈ [1e-12, 1]; the predicate is monotone in β.
    double lo = 1e-12, hi = 1.0;
    if (!passes(lo)) {
      r.best_beta = 0.0;
    } else {
      if (!worst) lo = w.beta;
      for (int it = 0; it < 60 && hi / lo > 1.0 + 1e-12; ++it) {
        const double mid = std::sqrt(lo * hi);
        (passes(mid) ? lo : hi) = mid;
      }
      r.best_beta = lo;
    }
  }

  if (worst) {
    r.verdict = Verdict::violated;
    Violation v;
    v.x = pts[worst->i];
    v.y = pts[worst->j];
    v.arg = worst->arg;
    v.lhs = worst->lhs;
    v.rhs = worst->rhs;
    v.residual = v.lhs - v.rhs;
    v.depth = worst->depth;
    r.violation = v;
  }
  return r;
}

ConditionReport check_A2(ConditionId id, const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                         const ConditionOptions& options) {
  switch (id) {
    case ConditionId::A2new: return check_A2_new(family, w, plan, options);
    case ConditionId::A2old: return check_A2_old(family, w, plan, options);
    case ConditionId::A2phi: return check_A2_phi(family, w, plan, options);
    case ConditionId::A2max: return check_A2_max(family, w, plan, options);
    default: throw UsageError("check_A2: " + to_string(id) + " is not an A2-type condition");
  }
}

ConditionReport check_growth(ConditionId id, const PhiFamily& family, double exponent, const SamplePlan& plan) {
  if (id != ConditionId::aIncP && id != ConditionId::aDecQ) throw UsageError("check_growth: expected aIncP or aDecQ");
  if (!(exponent > 0.0)) throw UsageError("check_growth: exponent must be positive");
  ConditionReport r = base_report(id, plan, "estimate");
  const GrowthEstimate e =
      id == ConditionId::aIncP ? estimate_ainc(family, exponent, plan) : estimate_adec(family, exponent, plan);
  r.best_beta = e.constant;
  r.tuples_checked = plan.x_points.size() * (plan.t_grid.size() - 1);
  r.depth_profile = {{0, e.constant}, {1, e.refined_constant}};
  if (e.flagged) r.warnings.push_back(std::to_string(e.flagged) + " inf/inf ratio(s) skipped");
  if (!e.holds) {
    r.verdict = Verdict::violated;
    Violation v;
    v.arg = exponent;
    v.lhs = e.refined_constant;
    v.rhs = 2.0 * e.constant;
    v.residual = v.lhs - v.rhs;
    v.depth = 1;
    if (!plan.x_points.empty()) v.x = v.y = plan.x_points.front().x;
    r.violation = v;
    r.warnings.push_back("constant grows under grid refinement (exponent " + format_number(exponent) + ")");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Witness transformations

Witness transform_witness(Formulation from, Formulation to, const Witness& w, const TransformContext& ctx) {
  if (!(ctx.a >= 1.0)) throw UsageError("transform_witness: a must be >= 1");
  w.validate();
  const double a = ctx.a;
  const double sigma = w.sigma;
  const double hs = w.h.sup_bound();
  auto through_strong = [&](Witness out) {
    if (ctx.strength == Strength::strong) return out;
    if (!ctx.strong_equivalence) {
      throw UsageError("transform_witness: " + to_string(from) + " -> " + to_string(to) +
                       " needs a strong family or the constant L of an equivalence to one");
    }
    const double L = *ctx.strong_equivalence;
    if (!(L >= 1.0)) throw UsageError("transform_witness: equivalence constant must be >= 1");
    out.beta /= L * L;
    return out;
  };
  using F = Formulation;
  if ((from == F::inverse_shifted && to == F::phi_form) || (from == F::phi_form && to == F::inverse_shifted)) {
    return through_strong(w);
  }
  if (from == F::old_half && to == F::phi_form) {
    if (hs > sigma / 2.0) throw UsageError("transform_witness: 4 -> 2 needs ‖h‖∞ <= σ/2");
    return through_strong(w);
  }
  if (from == F::inverse_shifted && to == F::inverse_max) {
    Witness out = w;
    const double shrink = hs > 0.0 ? std::min(1.0, sigma / (2.0 * a * hs)) : 1.0;
    out.beta = w.beta / (2.0 * a) * shrink;
    return out;
  }
  if (from == F::inverse_max && to == F::inverse_shifted) return w;
  if (from == F::inverse_max && to == F::old_half) {
    if (hs == 0.0 || hs <= sigma / 2.0) return w;
    Witness out = w;
    out.h = w.h.scaled(sigma / (2.0 * hs));
    out.beta = w.beta * sigma / (2.0 * a * hs);
    return out;
  }
  if (from == F::old_with_A0 && to == F::old_half) {
    if (!ctx.a0_beta) throw UsageError("transform_witness: 5 -> 4 needs the (A0) constant");
    const double b = std::min(w.beta, *ctx.a0_beta);
    Witness out = w;
    out.h = w.h.capped(sigma / 2.0);
    out.beta = b * b / (std::max(1.0, a * sigma) * std::max(1.0, 2.0 * a / sigma));
    return out;
  }
  if (from == F::old_half && to == F::old_with_A0) {
    if (hs > sigma / 2.0) throw UsageError("transform_witness: 4 -> 5 needs ‖h‖∞ <= σ/2");
    return w;
  }
  if (from == F::old_half && to == F::A0) {
    if (hs > 0.5 || sigma < 1.0) {
      throw UsageError("transform_witness: 4 -> A0 evaluates at τ = 1 and needs ‖h‖∞ <= 1/2 <= σ/2");
    }
    if (!ctx.inverse_at_one_min || !ctx.inverse_at_one_max) {
      throw UsageError("transform_witness: 4 -> A0 needs ess inf and ess sup of φ⁻¹(·,1)");
    }
    const double m = *ctx.inverse_at_one_min;
    const double M = *ctx.inverse_at_one_max;
    if (!(m > 0.0) || std::isinf(M)) throw UsageError("transform_witness: φ⁻¹(·,1) not bounded away from 0 and ∞");
    Witness out;
    out.beta = std::min(1.0, w.beta * std::min(M, 1.0 / m));
    out.h = WeightFunction::zero();
    out.sigma = sigma;
    return out;
  }
  throw UsageError("transform_witness: no proved arrow " + to_string(from) + " -> " + to_string(to));
}

Witness construct_bounded_witness(const PhiFamily& family, double sigma, double a0_beta, double a) {
  if (!family.domain().bounded()) throw UsageError("construct_bounded_witness: domain is unbounded");
  if (!(sigma > 0.0) || std::isinf(sigma)) throw UsageError("construct_bounded_witness: sigma must be positive");
  if (!(a0_beta > 0.0 && a0_beta <= 1.0)) throw UsageError("construct_bounded_witness: a0_beta must lie in (0,1]");
  if (!(a >= 1.0)) throw UsageError("construct_bounded_witness: a must be >= 1");
  Witness w;
  w.beta = a0_beta * a0_beta / std::max(1.0, a * sigma);
  w.h = WeightFunction::indicator(1.0, family.domain());
  w.sigma = sigma;
  return w;
}

Witness construct_bounded_witness(const PhiFamily& family, double sigma, const SamplePlan& plan,
                                  const ConditionOptions& options) {
  const ConditionReport a0 = check_A0(family, plan, options);
  if (!a0.holds()) throw UsageError("construct_bounded_witness: (A0) is violated on the sample plan");
  return construct_bounded_witness(family, sigma, a0.best_beta, family.ainc_constant());
}

Witness conjugate_transfer_witness(const Witness& max_form, double product_constant) {
  if (!(product_constant >= 1.0) || std::isinf(product_constant)) {
    throw UsageError("conjugate_transfer_witness: constant must be finite and >= 1");
  }
  Witness out = max_form;
  out.beta = max_form.beta / (product_constant * product_constant);
  return out;
}

// ---------------------------------------------------------------------------
// Counterexample search

SearchOutcome counterexample_search(const PhiFamily& family, ConditionId id, double beta_floor, double h_sup_cap,
                                    double sigma, const SamplePlan& plan, const SearchOptions& options) {
  if (!(beta_floor > 0.0 && beta_floor <= 1.0)) throw UsageError("counterexample_search: beta_floor must lie in (0,1]");
  if (!(h_sup_cap >= 0.0) || std::isinf(h_sup_cap)) throw UsageError("counterexample_search: h_sup_cap must be finite");
  if (!(sigma > 0.0) || std::isinf(sigma)) throw UsageError("counterexample_search: sigma must be positive");
  SearchOutcome out;
  if (id == ConditionId::A0 || id == ConditionId::A1) {
    const ConditionReport r = id == ConditionId::A0 ? check_A0(family, plan, options.condition)
                                                    : check_A1(family, plan, options.condition);
    out.found = !r.holds();
    out.certificate = r.violation;
    out.tuples_checked = r.tuples_checked;
    out.depth_reached = plan.refinement_depth;
    out.residual_profile = r.depth_profile;
    return out;
  }
  if (id != ConditionId::A2new && id != ConditionId::A2old && id != ConditionId::A2phi && id != ConditionId::A2max) {
    throw UsageError("counterexample_search: unsupported condition " + to_string(id));
  }

  const SpatialDomain& domain = family.domain();
  const double H = 2.0 * h_sup_cap;
  const double beta = beta_floor;
  const double slack = options.condition.slack;
  const bool phi_form = id == ConditionId::A2phi;
  const std::vector<double> taus = grid_window(plan.tau_grid, 0.0, sigma);
  const std::vector<double>& ts = plan.t_grid;

  std::vector<Point> pool;
  std::vector<int> pool_depth;
  InverseCache cache(family, options.condition.inverse);
  std::vector<std::size_t> cache_idx;
  // φ-form tables, grown with the pool.
  std::vector<std::vector<double>> phi_rows, lhs_rows;
  std::vector<std::size_t> admissible;

  auto add_point = [&](const Point& p, int depth) {
    if (std::find(pool.begin(), pool.end(), p) != pool.end()) return;
    pool.push_back(p);
    pool_depth.push_back(depth);
    if (phi_form) {
      std::vector<double> row(ts.size()), lrow(ts.size());
      std::size_t count = 0;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        row[k] = family(p, ts[k]);
        lrow[k] = family(p, beta * ts[k]);
        if (row[k] <= sigma) count = k + 1;
      }
      phi_rows.push_back(std::move(row));
      lhs_rows.push_back(std::move(lrow));
      admissible.push_back(count);
    } else {
      cache_idx.push_back(cache.add(p));
    }
  };

  const Form form = phi_form ? Form::shifted : form_of(id);
  std::vector<double> residuals;
  for (int d = 0; d <= options.max_depth; ++d) {
    const std::size_t first_new = pool.size();
    if (d <= plan.refinement_depth) {
      for (const SamplePoint& sp : plan.x_points) {
        if (sp.depth == d) add_point(sp.x, d);
      }
    } else {
      for (const Point& p : approach_points(domain, d)) add_point(p, d);
    }
    const std::size_t n = pool.size();
    double best_residual = -kInfinity;
    std::optional<Violation> best;
    double best_excess = 0.0;

    auto consider = [&](std::size_t i, std::size_t j, double arg, double lhs, double rhs) {
      ++out.tuples_checked;
      const double residual = lhs - rhs;
      best_residual = std::max(best_residual, residual);
      if (lhs > rhs * (1.0 + slack)) {
        const double e = excess_of(lhs, rhs);
        if (!best || e > best_excess) {
          best_excess = e;
          best = Violation{pool[i], pool[j], arg, lhs, rhs, residual, d};
        }
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = (i < first_new ? first_new : 0); j < n; ++j) {
        if (phi_form) {
          for (std::size_t k = 0; k < admissible[j]; ++k) consider(i, j, ts[k], lhs_rows[i][k], phi_rows[j][k] + H);
        } else {
          for_each_arg(form, H, sigma, taus, [&](double ax, double ay) {
            consider(i, j, ax, beta * cache(cache_idx[i], ax), cache(cache_idx[j], ay));
          });
        }
      }
    }
    residuals.push_back(best_residual);
    out.residual_profile.push_back({d, best_residual});
    out.depth_reached = d;
    if (best && static_cast<int>(residuals.size()) > options.confirm_depths) {
      bool growing = true;
      for (std::size_t k = residuals.size() - options.confirm_depths; k < residuals.size(); ++k) {
        if (!(residuals[k] > residuals[k - 1])) growing = false;
      }
      if (growing) {
        out.found = true;
        out.certificate = best;
        return out;
      }
    }
    if (options.max_tuples > 0 && out.tuples_checked >= options.max_tuples) {
      out.budget_exhausted = true;
      break;
    }
  }
  return out;
}

ConditionReport search_A2(ConditionId id, const PhiFamily& family, double beta_floor, double h_sup_cap, double sigma,
                          const SamplePlan& plan, const SearchOptions& options) {
  const SearchOutcome s = counterexample_search(family, id, beta_floor, h_sup_cap, sigma, plan, options);
  if (s.found) {
    ConditionReport r = base_report(id, plan, "search");
    r.verdict = Verdict::violated;
    r.violation = s.certificate;
    r.tuples_checked = s.tuples_checked;
    r.depth_profile = s.residual_profile;
    r.best_beta = 0.0;
    r.warnings.push_back("no beta >= " + format_number(beta_floor) + " with ‖h‖∞ <= " + format_number(h_sup_cap) +
                         " survives refinement to depth " + std::to_string(s.depth_reached));
    return r;
  }
  const SpatialDomain& domain = family.domain();
  Witness w;
  w.sigma = sigma;
  w.h = domain.bounded() ? WeightFunction::indicator(h_sup_cap, domain)
                         : WeightFunction::envelope(h_sup_cap, domain.dimension());
  w.beta = 1.0;
  ConditionReport probe = check_A2(id, family, w, plan, options.condition);
  ConditionReport r = probe;
  if (probe.holds()) {
    r.mode = "search";
  } else if (probe.best_beta > 0.0) {
    w.beta = probe.best_beta;
    r = check_A2(id, family, w, plan, options.condition);
    r.mode = "search";
    r.best_beta = probe.best_beta;
  } else {
    r.mode = "search";
    r.warnings.push_back("infimum ratio is 0 with h = " + w.h.describe());
  }
  r.tuples_checked += s.tuples_checked;
  if (s.budget_exhausted) {
    r.warnings.push_back("search stopped at depth " + std::to_string(s.depth_reached) + " on the tuple budget");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Implication suite

namespace {

struct SuiteContext {
  const PhiFamily& family;
  const SamplePlan& plan;
  const SuiteOptions& options;
  ConditionOptions quick;  // no φ-form bisection for edge targets
  TransformContext transform;
  const ConditionReport& a0;
};

ConditionReport check_formulation(const SuiteContext& sc, Formulation f, const Witness& w) {
  return check_A2(condition_of(f), sc.family, w, sc.plan, sc.quick);
}

/// Formulation 5 holds when A2old holds and (A0) holds with at least the transported constant.
bool a0_meets(const ConditionReport& a0, double required) {
  return a0.holds() && a0.best_beta >= required * (1.0 - 1e-9);
}

EdgeResult run_edge(const SuiteContext& sc, Formulation from, Formulation to, const FormulationResult& source,
                    const std::string& label = {}) {
  EdgeResult e;
  e.from = label.empty() ? to_string(from) : label;
  e.to = to_string(to);
  e.source_holds = source.holds;
  if (!source.holds || !source.report.witness) {
    e.note = source.holds ? "source has no witness" : "source violated; arrow not exercised";
    return e;
  }
  Witness w;
  try {
    w = transform_witness(from, to, *source.report.witness, sc.transform);
  } catch (const UsageError& err) {
    e.note = err.what();
    return e;
  }
  e.tested = true;
  e.witness = w;
  const ConditionReport target = check_formulation(sc, to, w);
  e.target_holds = target.holds();
  if (to == Formulation::old_with_A0) {
    try {
      const Witness a0w = transform_witness(Formulation::old_half, Formulation::A0, w, sc.transform);
      e.target_holds = e.target_holds && a0_meets(sc.a0, a0w.beta);
      e.note = "A0 needs beta >= " + format_number(a0w.beta) + ", measured " + format_number(sc.a0.best_beta);
    } catch (const UsageError& err) {
      e.target_holds = e.target_holds && sc.a0.holds();
      e.note = err.what();
    }
  }
  e.consistent = e.target_holds;
  if (!e.consistent) e.offending = target.violation;
  return e;
}

}  // namespace

SuiteResult implication_suite(const PhiFamily& family, const SamplePlan& plan, const SuiteOptions& options) {
  SuiteResult out;
  const ConditionOptions& co = options.search.condition;
  out.a0 = check_A0(family, plan, co);
  const SpatialDomain& domain = family.domain();
  if (domain.bounded()) out.a1 = check_A1(family, plan, co);

  TransformContext tc;
  tc.a = family.ainc_constant();
  tc.strength = family.strength();
  tc.inverse_at_one_min = out.a0.inverse_at_one_min;
  tc.inverse_at_one_max = out.a0.inverse_at_one_max;
  if (out.a0.holds()) tc.a0_beta = out.a0.best_beta;
  SuiteContext sc{family, plan, options, co, tc, out.a0};
  sc.quick.phi_form_best_beta = false;
  const double sigma = options.sigma;

  auto result = [](Formulation f, ConditionReport rep) {
    FormulationResult fr;
    fr.formulation = f;
    fr.holds = rep.holds();
    fr.report = std::move(rep);
    return fr;
  };

  std::optional<Witness> w1;
  if (domain.bounded() && out.a0.holds()) {
    out.mode = "verification";
    w1 = construct_bounded_witness(family, sigma, out.a0.best_beta, tc.a);
    FormulationResult f1 = result(Formulation::inverse_shifted, check_A2_new(family, *w1, plan, co));
    FormulationResult f2;
    try {
      const Witness w2 = transform_witness(Formulation::inverse_shifted, Formulation::phi_form, *w1, tc);
      f2 = result(Formulation::phi_form, check_A2_phi(family, w2, plan, co));
    } catch (const UsageError&) {
      f2 = result(Formulation::phi_form,
                  search_A2(ConditionId::A2phi, family, options.beta_floor, options.h_sup_cap, sigma, plan,
                            options.search));
    }
    const Witness w3 = transform_witness(Formulation::inverse_shifted, Formulation::inverse_max, *w1, tc);
    FormulationResult f3 = result(Formulation::inverse_max, check_A2_max(family, w3, plan, co));
    const Witness w4 = transform_witness(Formulation::inverse_max, Formulation::old_half, w3, tc);
    FormulationResult f4 = result(Formulation::old_half, check_A2_old(family, w4, plan, co));
    FormulationResult f5 = result(Formulation::old_with_A0, f4.report);
    try {
      const double required = transform_witness(Formulation::old_half, Formulation::A0, w4, tc).beta;
      f5.required_a0_beta = required;
      f5.holds = f4.holds && a0_meets(out.a0, required);
    } catch (const UsageError& err) {
      f5.report.warnings.push_back(err.what());
      f5.holds = f4.holds && out.a0.holds();
    }
    out.formulations = {std::move(f1), std::move(f2), std::move(f3), std::move(f4), std::move(f5)};
  } else {
    out.mode = "search";
    const double cap = options.h_sup_cap;
    const double half = std::min(cap, sigma / 2.0);
    auto s = [&](ConditionId id, double c) {
      return search_A2(id, family, options.beta_floor, c, sigma, plan, options.search);
    };
    FormulationResult f5 = result(Formulation::old_with_A0, s(ConditionId::A2old, cap));
    f5.holds = f5.holds && out.a0.holds();
    out.formulations = {result(Formulation::inverse_shifted, s(ConditionId::A2new, cap)),
                        result(Formulation::phi_form, s(ConditionId::A2phi, cap)),
                        result(Formulation::inverse_max, s(ConditionId::A2max, cap)),
                        result(Formulation::old_half, s(ConditionId::A2old, half)), std::move(f5)};
  }

  // Verdict agreement across the five formulations.
  const bool first = out.formulations.front().holds;
  for (const FormulationResult& f : out.formulations) {
    if (f.holds != first) {
      ++out.inconsistencies;
      EdgeResult e;
      e.from = to_string(out.formulations.front().formulation);
      e.to = to_string(f.formulation);
      e.tested = true;
      e.source_holds = first;
      e.target_holds = f.holds;
      e.consistent = false;
      e.note = "formulation verdicts disagree";
      e.offending = f.report.violation;
      out.edges.push_back(std::move(e));
    }
  }

  const auto& F = out.formulations;
  using Fm = Formulation;
  out.edges.push_back(run_edge(sc, Fm::inverse_shifted, Fm::phi_form, F[0]));
  out.edges.push_back(run_edge(sc, Fm::phi_form, Fm::inverse_shifted, F[1]));
  out.edges.push_back(run_edge(sc, Fm::inverse_shifted, Fm::inverse_max, F[0]));
  out.edges.push_back(run_edge(sc, Fm::inverse_max, Fm::inverse_shifted, F[2]));
  out.edges.push_back(run_edge(sc, Fm::inverse_max, Fm::old_half, F[2]));
  out.edges.push_back(run_edge(sc, Fm::old_half, Fm::phi_form, F[3]));
  out.edges.push_back(run_edge(sc, Fm::old_half, Fm::old_with_A0, F[3]));
  if (tc.a0_beta) {
    out.edges.push_back(run_edge(sc, Fm::old_with_A0, Fm::old_half, F[4]));
    if (domain.bounded()) {
      // A2old with h = σχ_Ω is vacuous; together with (A0) it still yields (4).
      FormulationResult big;
      big.formulation = Fm::old_with_A0;
      big.report = check_A2_old(family, Witness{1.0, WeightFunction::indicator(sigma, domain), sigma}, plan, co);
      big.holds = big.report.holds() && out.a0.holds();
      out.edges.push_back(run_edge(sc, Fm::old_with_A0, Fm::old_half, big, "5:A2old(h=sigma)+A0"));
    }
  }

  if (out.a1) {
    EdgeResult to_a0;
    to_a0.from = "A1";
    to_a0.to = "A0";
    to_a0.source_holds = out.a1->holds();
    to_a0.tested = to_a0.source_holds;
    to_a0.target_holds = out.a0.holds();
    to_a0.consistent = !to_a0.tested || to_a0.target_holds;
    if (!to_a0.consistent) to_a0.offending = out.a0.violation;
    out.edges.push_back(std::move(to_a0));

    EdgeResult to_a2;
    to_a2.from = "A1";
    to_a2.to = "A2";
    to_a2.source_holds = out.a1->holds();
    to_a2.tested = to_a2.source_holds;
    to_a2.target_holds = out.formulations.front().holds;
    to_a2.consistent = !to_a2.tested || to_a2.target_holds;
    if (!to_a2.consistent) to_a2.offending = out.formulations.front().report.violation;
    out.edges.push_back(std::move(to_a2));
  }

  if (domain.bounded()) {
    ConditionReport vac = check_A2_old(family, Witness{1.0, WeightFunction::indicator(sigma, domain), sigma}, plan, co);
    out.extras.push_back(std::move(vac));
  }

  for (const EdgeResult& e : out.edges) {
    if (e.note != "formulation verdicts disagree" && !e.consistent) ++out.inconsistencies;
  }
  return out;
}

}  // namespace orlicz
