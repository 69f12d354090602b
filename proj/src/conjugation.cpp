#include "orlicz/conjugation.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/format.hpp"

namespace orlicz {

namespace {

constexpr double kStabilityFactor = 1.2;
constexpr double kProductCap = 1e3;

struct Sample {
  double s;
  double value;
};

}  // namespace

Conjugator::Conjugator(ConjugateOptions options) : options_(options), grid_(log_grid(options.s_grid)) {
  if (options_.refine_steps < 0) throw UsageError("conjugate: refine_steps must be >= 0");
}

double Conjugator::operator()(const PhiFamily& family, const Point& x, double t) const {
  if (!(t > 0.0)) return 0.0;
  auto objective = [&](double s) {
    const double phi = family(x, s);
    return std::isinf(phi) ? -kInfinity : s * t - phi;
  };

  std::vector<Sample> samples;
  samples.reserve(grid_.size() + 16);
  for (double s : grid_) samples.push_back({s, objective(s)});
  auto best_index = [&samples] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].value > samples[best].value) best = i;
    }
    return best;
  };

  std::size_t best = best_index();
  if (best + 1 == samples.size()) {
    double prev = samples.back().value;
    double s = samples.back().s;
    bool increasing = true;
    while (true) {
      s *= 10.0;
      if (s > options_.extension_limit || !std::isfinite(s * t)) break;
      const double v = objective(s);
      samples.push_back({s, v});
      if (!(v > prev)) {
        increasing = false;
        break;
      }
      prev = v;
    }
    if (increasing) return prev > options_.infinity_threshold ? kInfinity : std::max(prev, 0.0);
  } else if (best <= 1 && samples.size() > 1) {
    // The maximizer may sit below the first positive grid node.
    std::vector<Sample> below;
    double prev = samples[1].value;
    double s = samples[1].s;
    while (s > 1e-300) {
      s /= 10.0;
      const double v = objective(s);
      below.push_back({s, v});
      if (!(v > prev)) break;
      prev = v;
    }
    std::reverse(below.begin(), below.end());
    samples.insert(samples.begin() + 1, below.begin(), below.end());
  }
  best = best_index();
  double result = samples[best].value;
  if (best > 0 && best + 1 < samples.size()) {
    double lo = samples[best - 1].s;
    double hi = samples[best + 1].s;
    for (int step = 0; step < options_.refine_steps; ++step) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      const double v1 = objective(m1);
      const double v2 = objective(m2);
      result = std::max({result, v1, v2});
      if (v1 < v2) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
  }
  return std::max(result, 0.0);
}

Extended conjugate(const ConjugateQuery& q) {
  if (!(q.t >= 0.0)) throw DomainError("conjugate: t must be nonnegative");
  if (!q.family.domain().admissible(q.x)) throw DomainError("conjugate: " + to_string(q.x) + " is not admissible");
  return Extended(Conjugator(q.options)(q.family, q.x, q.t));
}

Extended conjugate(const PhiFamily& family, const Point& x, double t, const ConjugateOptions& options) {
  return conjugate(ConjugateQuery{family, x, t, options});
}

PhiFamily conjugate_family(const PhiFamily& family, const ConjugateOptions& options) {
  auto conj = std::make_shared<const Conjugator>(options);
  PhiTraits traits;
  traits.ainc_constant = 1.0;
  const auto& ainc = family.traits().ainc_p;
  traits.strength = (ainc && ainc->exponent > 1.0) ? Strength::strong : Strength::weak;
  return PhiFamily(
      "conjugate(" + family.name() + ")",
      [base = family, conj](const Point& x, double t) { return Extended((*conj)(base, x, t)); }, family.domain(),
      traits);
}

namespace {

struct ProductSweep {
  double min_ratio = kInfinity;
  double max_ratio = 0.0;
  std::size_t samples = 0;
  Point worst_x;
  double worst_tau = 0.0;

  [[nodiscard]] double constant() const {
    if (samples == 0) return 1.0;
    if (!(min_ratio > 0.0)) return kInfinity;
    return std::max({1.0, max_ratio, 1.0 / min_ratio});
  }
};

ProductSweep product_sweep(const PhiFamily& family, const PhiFamily& conj, const SamplePlan& plan,
                           const InverseOptions& io) {
  ProductSweep sw;
  double worst = 1.0;
  for (const SamplePoint& sp : plan.x_points) {
    for (double tau : plan.tau_grid) {
      if (!(tau > 0.0)) continue;  // (φ*)⁻¹(x,0) = 0: the bound holds trivially
      const double a = left_inverse_or_inf(family, sp.x, tau, io);
      const double b = left_inverse_or_inf(conj, sp.x, tau, io);
      if (std::isinf(a) || std::isinf(b)) continue;
      const double ratio = a * b / tau;
      ++sw.samples;
      sw.min_ratio = std::min(sw.min_ratio, ratio);
      sw.max_ratio = std::max(sw.max_ratio, ratio);
      const double need = ratio > 0.0 ? std::max(ratio, 1.0 / ratio) : kInfinity;
      if (need > worst) {
        worst = need;
        sw.worst_x = sp.x;
        sw.worst_tau = tau;
      }
    }
  }
  return sw;
}

}  // namespace

InverseProductReport inverse_product_check(const PhiFamily& family, const SamplePlan& plan,
                                           const ConjugateOptions& conjugate_options,
                                           const InverseOptions& inverse_options) {
  for (const SamplePoint& sp : plan.x_points) {
    if (!family.domain().admissible(sp.x)) throw DomainError("inverse_product_check: inadmissible plan point");
  }
  const PhiFamily conj = conjugate_family(family, conjugate_options);
  const ProductSweep coarse = product_sweep(family, conj, plan, inverse_options);
  const ProductSweep fine = product_sweep(family, conj, refine_grids(plan), inverse_options);
  InverseProductReport r;
  r.constant = coarse.constant();
  r.refined_constant = fine.constant();
  r.min_ratio = coarse.min_ratio;
  r.max_ratio = coarse.max_ratio;
  r.samples = coarse.samples;
  r.worst_x = coarse.worst_x;
  r.worst_tau = coarse.worst_tau;
  r.stable = std::isfinite(r.constant) && r.refined_constant <= kStabilityFactor * r.constant;
  r.holds = r.stable && r.constant <= kProductCap;
  return r;
}

}  // namespace orlicz
