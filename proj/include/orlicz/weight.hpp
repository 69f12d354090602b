#pragma once

#include <functional>
#include <string>

#include "orlicz/domain.hpp"

namespace orlicz {

struct SamplePlan;

enum class WeightKind { zero, indicator, envelope, custom };

/// A nonnegative function h on Ω with declared bounds on ‖h‖∞ and ‖h‖₁.
class WeightFunction {
 public:
  using Fn = std::function<double(const Point&)>;

  static WeightFunction zero();
  /// c·χ_Ω; ‖h‖₁ = c|Ω| (bounded Ω only).
  static WeightFunction indicator(double c, const SpatialDomain& domain);
  /// c·min{1, |x|^-(n+1)}; ‖h‖₁ = c(n+1)ω_n.
  static WeightFunction envelope(double c, std::size_t dimension);
  static WeightFunction custom(Fn fn, double sup_bound, double l1_bound, std::string description);

  /// k·h
  [[nodiscard]] WeightFunction scaled(double k) const;
  /// min{h, c}
  [[nodiscard]] WeightFunction capped(double c) const;

  [[nodiscard]] double operator()(const Point& x) const { return fn_(x); }
  [[nodiscard]] double sup_bound() const { return sup_; }
  [[nodiscard]] double l1_bound() const { return l1_; }
  [[nodiscard]] WeightKind kind() const { return kind_; }
  /// The factor c of the indicator and envelope forms.
  [[nodiscard]] double level() const { return level_; }
  [[nodiscard]] const std::string& describe() const { return description_; }

 private:
  WeightFunction() = default;
  Fn fn_;
  double sup_ = 0.0;
  double l1_ = 0.0;
  double level_ = 0.0;
  double measure_ = 0.0;  // |Ω| for the indicator form
  std::size_t dimension_ = 0;
  WeightKind kind_ = WeightKind::zero;
  std::string description_;
};

/// (β, h, σ) instantiating the existential quantifiers of a condition.
struct Witness {
  double beta = 1.0;
  WeightFunction h = WeightFunction::zero();
  double sigma = 1.0;

  /// β ∈ (0,1], σ > 0, finite bounds; when a plan is given, every sampled
  /// h value lies in [0, sup_bound]. Throws UsageError.
  void validate(const SamplePlan* plan = nullptr) const;
  [[nodiscard]] std::string describe() const;
};

}  // namespace orlicz
