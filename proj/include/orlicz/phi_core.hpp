#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/phi_family.hpp"
#include "orlicz/sample_plan.hpp"

namespace orlicz {

enum class Classification { strong, weak, not_phi };

enum class Axiom {
  vanishes_at_zero,  // φ(x,0) = 0
  increasing,        // t ↦ φ(x,t) increasing
  finite_near_zero,  // φ finite at the smallest grid value; with (aInc)₁ this forces φ(x,0+) = 0
  blows_up,          // φ(x,t) → ∞ at the top of the grid
  almost_increasing_ratio,  // t ↦ φ(x,t)/t is a-almost increasing
  convexity,                // strong only: midpoint convexity
  continuity,               // strong only: no finite jump to +inf
};

std::string to_string(Classification c);
std::string to_string(Axiom a);

struct AxiomViolation {
  Point x;
  double t = 0.0;
  Axiom axiom = Axiom::increasing;
  /// Offending value: the ratio constant, the midpoint excess, the last finite value, ...
  double detail = 0.0;
};

struct ClassifyResult {
  Classification classification = Classification::not_phi;
  /// Violations of the weak Φ-function axioms.
  std::vector<AxiomViolation> violations;
  /// Failures of the extra strong-Φ requirements (not errors for weak families).
  std::vector<AxiomViolation> strong_failures;
  /// Estimated a of the almost-increasing ratio φ(x,t)/t.
  double ratio_constant = 1.0;
};

/// Midpoint convexity is tested with relative slack 1e-9.
ClassifyResult classify(const PhiFamily& family, const SamplePlan& plan);

struct GrowthEstimate {
  double exponent = 1.0;
  double constant = 1.0;
  double refined_constant = 1.0;
  bool holds = false;
  /// ∞/∞ ratios that were skipped.
  std::size_t flagged = 0;
};

struct GrowthReport {
  GrowthEstimate ainc;
  GrowthEstimate adec;
};

/// a_p = max over x and s <= t of [φ(x,s)/s^p] / [φ(x,t)/t^p], and dually a_q.
/// `holds` requires a finite estimate that grows by at most a factor 2 when the
/// grid is refined (double density, one more decade each side).
GrowthReport estimate_growth(const PhiFamily& family, double p, double q, const SamplePlan& plan);
GrowthEstimate estimate_ainc(const PhiFamily& family, double p, const SamplePlan& plan);
GrowthEstimate estimate_adec(const PhiFamily& family, double q, const SamplePlan& plan);

enum class EquivalenceKind {
  valuewise,     // φ ≈ ψ: φ/c <= ψ <= cφ
  argumentwise,  // φ ≃ ψ: φ(x,t/c) <= ψ(x,t) <= φ(x,ct)
};

std::string to_string(EquivalenceKind k);

struct EquivalenceCertificate {
  EquivalenceKind kind = EquivalenceKind::valuewise;
  double constant = 1.0;
  std::string verified_on;
};

struct EquivalenceViolation {
  Point x;
  double t = 0.0;
  /// The constant this tuple alone would need (+inf if none works).
  double required = 0.0;
};

struct EquivalenceResult {
  bool holds = false;
  EquivalenceCertificate certificate;
  double refined_constant = 1.0;
  std::optional<EquivalenceViolation> violation;
};

struct EquivalenceOptions {
  bool check_refinement = true;
  double growth_factor = 2.0;
  /// Largest argument scaling tried for ≃.
  double max_constant = 1e8;
};

/// Smallest constant certifying the two-sided inequality on the plan.
EquivalenceResult check_equivalence(const PhiFamily& phi, const PhiFamily& psi, EquivalenceKind kind,
                                    const SamplePlan& plan, const EquivalenceOptions& options = {});

}  // namespace orlicz
