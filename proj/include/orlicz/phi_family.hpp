#pragma once

#include <functional>
#include <optional>
#include <string>

#include "orlicz/domain.hpp"
#include "orlicz/extended.hpp"

namespace orlicz {

enum class Strength { weak, strong };

std::string to_string(Strength s);

/// Exponent with its almost-monotonicity constant, as in (aInc)_p / (aDec)_q.
struct GrowthBound {
  double exponent = 1.0;
  double constant = 1.0;
};

/// Declared structural constants of a family. `ainc_constant` is the a of
/// "t ↦ φ(x,t)/t is a-almost increasing".
struct PhiTraits {
  double ainc_constant = 1.0;
  Strength strength = Strength::weak;
  std::optional<GrowthBound> ainc_p;
  std::optional<GrowthBound> adec_q;
};

/// A spatially parametrized Φ-function φ: Ω × [0,∞) → [0,∞].
///
/// Immutable. The evaluator must be reentrant; it is called concurrently
/// only if the caller does so.
class PhiFamily {
 public:
  using Evaluator = std::function<Extended(const Point&, double)>;

  PhiFamily(std::string name, Evaluator evaluator, SpatialDomain domain, PhiTraits traits = {});

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const SpatialDomain& domain() const { return domain_; }
  [[nodiscard]] const PhiTraits& traits() const { return traits_; }
  [[nodiscard]] double ainc_constant() const { return traits_.ainc_constant; }
  [[nodiscard]] Strength strength() const { return traits_.strength; }

  /// φ(x,t) with admissibility checks: throws DomainError for x outside Ω,
  /// on an excluded point, or for t < 0.
  [[nodiscard]] Extended evaluate(const Point& x, double t) const;

  /// φ(x,t) as a double (+inf allowed), no checks. For inner loops whose
  /// points were admitted once up front.
  [[nodiscard]] double operator()(const Point& x, double t) const { return evaluator_(x, t).value(); }

  [[nodiscard]] const Evaluator& evaluator() const { return evaluator_; }

  /// Same evaluator on another domain (the density experiment works on a dilated support).
  [[nodiscard]] PhiFamily with_domain(SpatialDomain domain) const;

 private:
  std::string name_;
  Evaluator evaluator_;
  SpatialDomain domain_;
  PhiTraits traits_;
};

Extended evaluate(const PhiFamily& family, const Point& x, double t);

}  // namespace orlicz
