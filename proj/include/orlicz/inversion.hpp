#pragma once

#include <cstddef>

#include "orlicz/phi_family.hpp"
#include "orlicz/sample_plan.hpp"

namespace orlicz {

struct InverseOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double bracket_cap = 1e12;
};

/// One evaluation of φ⁻¹(x,τ) = inf{t >= 0 : φ(x,t) >= τ}.
struct InverseQuery {
  const PhiFamily& family;
  Point x;
  Extended tau;
  InverseOptions options{};
};

struct InverseResult {
  double value = 0.0;
  /// Set when τ = +inf: the value is the bracket cap, not an infimum.
  bool unbounded = false;
};

/// Exponential bracketing from t = 1, then bisection on the monotone
/// predicate φ(x,t) >= τ. Throws DomainError for inadmissible x and
/// UnboundedError when the predicate stays false up to the bracket cap.
InverseResult left_inverse(const InverseQuery& query);

/// Shorthand for finite τ; throws like left_inverse.
double left_inverse(const PhiFamily& family, const Point& x, double tau, const InverseOptions& options = {});

/// Same as above without admissibility checks; returns +inf instead of
/// throwing when the bracket cap is exceeded.
double left_inverse_or_inf(const PhiFamily& family, const Point& x, double tau, const InverseOptions& options = {});

struct ZeroPlateau {
  /// max{s >= 0 : φ(x,s) = 0}; plateaus shorter than abs_tol are reported as 0.
  double t0 = 0.0;
};

ZeroPlateau zero_plateau(const PhiFamily& family, const Point& x, const InverseOptions& options = {});

struct InverseIdentityReport {
  /// max |φ(x, φ⁻¹(x,τ)) - τ| / τ
  double forward_residual = 0.0;
  /// max |φ⁻¹(x, φ(x,t)) - t| / t over φ(x,t) ∈ (0,∞), t outside the zero plateau
  double backward_residual = 0.0;
  std::size_t forward_checked = 0;
  std::size_t backward_checked = 0;
  std::size_t skipped = 0;
  Point worst_x;
  double worst_value = 0.0;

  [[nodiscard]] bool holds(double tolerance = 1e-8) const {
    return forward_residual < tolerance && backward_residual < tolerance;
  }
};

/// The strong-Φ identities φ(x,φ⁻¹(x,τ)) = τ and φ⁻¹(x,φ(x,t)) = t on the plan.
InverseIdentityReport verify_inverse_identities(const PhiFamily& family, const SamplePlan& plan,
                                                const InverseOptions& options = {});

struct InverseAdecReport {
  /// Smallest A with φ⁻¹(x,t)/t <= A φ⁻¹(x,s)/s for sampled s <= t.
  double constant = 1.0;
  /// max φ⁻¹(x,2τ) / (2 φ⁻¹(x,τ)); bounded by a under (aInc)₁.
  double doubling_ratio = 0.0;
  bool doubling_holds = true;
};

/// (aDec)₁ of τ ↦ φ⁻¹(x,τ) and its doubling form φ⁻¹(x,2τ) <= 2a φ⁻¹(x,τ).
InverseAdecReport inverse_adec1_check(const PhiFamily& family, const SamplePlan& plan,
                                      const InverseOptions& options = {});

}  // namespace orlicz
