#pragma once

#include <memory>
#include <vector>

#include "orlicz/inversion.hpp"
#include "orlicz/phi_family.hpp"
#include "orlicz/sample_plan.hpp"

namespace orlicz {

struct ConjugateOptions {
  /// Search grid for s; 0 is always included.
  GridSpec s_grid{1e-8, 1e8, 401};
  /// Ternary-search iterations around the best grid cell.
  int refine_steps = 40;
  /// Objective values beyond this that are still increasing at the end of the
  /// extended search are reported as +inf.
  double infinity_threshold = 1e16;
  /// Largest s visited when the maximizer lies past the grid.
  double extension_limit = 1e300;
};

/// Evaluates φ*(x,t) = sup{st - φ(x,s) : s >= 0}.
///
/// Grid scan, decade-wise extension past either end of the grid while the
/// objective still improves, then ternary refinement inside the best cell.
/// The refinement is exact for convex φ(x,·) (concave objective) and
/// best-effort otherwise.
class Conjugator {
 public:
  explicit Conjugator(ConjugateOptions options = {});

  /// +inf allowed; no admissibility checks.
  [[nodiscard]] double operator()(const PhiFamily& family, const Point& x, double t) const;
  [[nodiscard]] const ConjugateOptions& options() const { return options_; }

 private:
  ConjugateOptions options_;
  std::vector<double> grid_;
};

struct ConjugateQuery {
  const PhiFamily& family;
  Point x;
  double t = 0.0;
  ConjugateOptions options{};
};

Extended conjugate(const ConjugateQuery& query);
Extended conjugate(const PhiFamily& family, const Point& x, double t, const ConjugateOptions& options = {});

/// φ* as a family on the same domain. Always convex with ratio constant 1;
/// tagged strong when φ has (aInc)_p for some p > 1 (then φ* is finite).
PhiFamily conjugate_family(const PhiFamily& family, const ConjugateOptions& options = {});

struct InverseProductReport {
  /// Smallest c with τ/c <= (φ*)⁻¹(x,τ) φ⁻¹(x,τ) <= cτ on the plan.
  double constant = 1.0;
  double refined_constant = 1.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t samples = 0;
  /// refined_constant <= 1.2 · constant
  bool stable = false;
  /// finite, at most 1e3, and stable
  bool holds = false;
  Point worst_x;
  double worst_tau = 0.0;
};

InverseProductReport inverse_product_check(const PhiFamily& family, const SamplePlan& plan,
                                           const ConjugateOptions& conjugate_options = {},
                                           const InverseOptions& inverse_options = {});

}  // namespace orlicz
