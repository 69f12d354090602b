#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/inversion.hpp"
#include "orlicz/phi_family.hpp"
#include "orlicz/sample_plan.hpp"
#include "orlicz/weight.hpp"

namespace orlicz {

enum class ConditionId { A0, A1, A2new, A2old, A2phi, A2max, aIncP, aDecQ };
enum class Verdict { holds_on_samples, violated };

std::string to_string(ConditionId id);
std::string to_string(Verdict v);
/// Accepts the names produced by to_string; throws UsageError otherwise.
ConditionId parse_condition(const std::string& name);
Verdict parse_verdict(const std::string& name);

/// A tuple on which the defining inequality fails. `arg` is τ for the
/// inverse forms and t for the φ-form.
struct Violation {
  Point x;
  Point y;
  double arg = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  int depth = 0;
};

/// Best β seen using sample points up to a refinement depth.
struct DepthSample {
  int depth = 0;
  double value = 0.0;
};

struct ConditionReport {
  ConditionId id = ConditionId::A0;
  Verdict verdict = Verdict::holds_on_samples;
  /// "given" (witness supplied), "search" or "estimate" (A0, A1, growth).
  std::string mode = "given";
  /// No sampled tuple fell in the checked range.
  bool vacuous = false;
  std::optional<Witness> witness;
  /// Infimum ratio over checked tuples, capped at 1; for the growth ids,
  /// the estimated constant.
  double best_beta = 1.0;
  std::optional<Violation> violation;
  std::size_t tuples_checked = 0;
  std::vector<std::string> warnings;
  std::vector<DepthSample> depth_profile;
  /// A0 only: min and max of φ⁻¹(x,1) over the sampled x.
  std::optional<double> inverse_at_one_min;
  std::optional<double> inverse_at_one_max;
  std::string plan_summary;

  [[nodiscard]] bool holds() const { return verdict == Verdict::holds_on_samples; }
};

struct ConditionOptions {
  /// Relative slack on the right-hand side.
  double slack = 1e-9;
  InverseOptions inverse{};
  /// Divergence rule for estimate-mode verdicts: the depth profile shrinks
  /// by at least `divergence_shrink` (relative) at each of the last
  /// `divergence_window` depths.
  int divergence_window = 5;
  double divergence_shrink = 0.01;
  /// Compute the best β of the φ-form by bisection (otherwise reported as the given β).
  bool phi_form_best_beta = true;
};

/// β <= φ⁻¹(x,1) <= 1/β.
ConditionReport check_A0(const PhiFamily& family, const SamplePlan& plan, const ConditionOptions& options = {});
/// β φ⁻¹(x,τ) <= φ⁻¹(y,τ) for x, y in each sampled ball B and τ ∈ [1, 1/|B|].
ConditionReport check_A1(const PhiFamily& family, const SamplePlan& plan, const ConditionOptions& options = {});
/// β φ⁻¹(x,τ) <= φ⁻¹(y, τ+h(x)+h(y)) for τ ∈ [0,σ].
ConditionReport check_A2_new(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options = {});
/// β φ⁻¹(x,τ) <= φ⁻¹(y,τ) for τ ∈ [h(x)+h(y), σ]; vacuous when that range is always empty.
ConditionReport check_A2_old(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options = {});
/// φ(x,βt) <= φ(y,t) + h(x) + h(y) when φ(y,t) <= σ.
ConditionReport check_A2_phi(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options = {});
/// β φ⁻¹(x,τ̃) <= φ⁻¹(y,τ̃) with τ̃ = max{τ, h(x)+h(y)}, τ ∈ [0,σ].
ConditionReport check_A2_max(const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                             const ConditionOptions& options = {});
/// Dispatches on the four A2-type ids.
ConditionReport check_A2(ConditionId id, const PhiFamily& family, const Witness& w, const SamplePlan& plan,
                         const ConditionOptions& options = {});
/// (aInc)_p or (aDec)_q as a report; best_beta holds the estimated constant.
ConditionReport check_growth(ConditionId id, const PhiFamily& family, double exponent, const SamplePlan& plan);

/// The five equivalent formulations plus (A0) as a transformation target.
enum class Formulation {
  inverse_shifted = 1,  // A2new
  phi_form = 2,         // A2phi
  inverse_max = 3,      // A2max
  old_half = 4,         // A2old with ‖h‖∞ <= σ/2
  old_with_A0 = 5,      // A2old together with A0
  A0 = 6,
};

std::string to_string(Formulation f);
ConditionId condition_of(Formulation f);

struct TransformContext {
  /// The (aInc)₁ constant of the family.
  double a = 1.0;
  /// Needed by 5→4.
  std::optional<double> a0_beta;
  /// ess inf and ess sup of φ⁻¹(·,1); needed by 4→A0.
  std::optional<double> inverse_at_one_min;
  std::optional<double> inverse_at_one_max;
  /// 1↔2 and 4→2 go through the strong case. For weak families supply the
  /// constant L of an equivalence φ ≃ ψ with ψ strong; β shrinks by L².
  Strength strength = Strength::weak;
  std::optional<double> strong_equivalence;
};

/// Explicit witness formulas of the equivalence proof:
///   1→3  β/(2a)·min{1, σ/(2a‖h‖∞)}, same h
///   3→1  identity
///   3→4  h̃ = σh/(2‖h‖∞), β̃ = βσ/(2a‖h‖∞); unchanged when ‖h‖∞ <= σ/2
///   5→4  h̃ = min{h, σ/2}, β̃ = b²/(max{1,aσ} max{1,2a/σ}), b = min{β, a0_beta}
///   4→A0 β̃ = β·min{ess sup φ⁻¹(·,1), 1/ess inf φ⁻¹(·,1)} capped at 1 (h = 0)
///   1→2, 2→1, 4→2  identity for strong families, β/L² otherwise
/// 4→5 keeps the witness (the (A0) half comes from 4→A0). Anything else
/// throws UsageError.
Witness transform_witness(Formulation from, Formulation to, const Witness& w, const TransformContext& context);

/// (β0²/max{1, aσ}, χ_Ω, σ). Throws UsageError on an unbounded domain or
/// out-of-range arguments.
Witness construct_bounded_witness(const PhiFamily& family, double sigma, double a0_beta, double a);
/// Same, with a0_beta taken from check_A0; throws UsageError when (A0) fails.
Witness construct_bounded_witness(const PhiFamily& family, double sigma, const SamplePlan& plan,
                                  const ConditionOptions& options = {});

/// Witness for φ* in the max form from a max-form witness of φ and the
/// inverse-product constant c: (β/c², h).
Witness conjugate_transfer_witness(const Witness& max_form, double product_constant);

struct SearchOptions {
  int max_depth = 60;
  /// Consecutive strictly growing residual depths required before reporting.
  int confirm_depths = 5;
  /// Stop after the depth at which this many tuples have been examined; 0 means no limit.
  std::size_t max_tuples = 0;
  ConditionOptions condition{};
};

struct SearchOutcome {
  bool found = false;
  std::optional<Violation> certificate;
  int depth_reached = 0;
  std::size_t tuples_checked = 0;
  bool budget_exhausted = false;
  /// Largest residual per depth among tuples that involve that depth's new points.
  std::vector<DepthSample> residual_profile;
};

/// Looks for a tuple violating the condition for every β >= beta_floor and
/// every h with ‖h‖∞ <= h_sup_cap: β is set to beta_floor and h(x)+h(y) to
/// 2·h_sup_cap, which is the most favorable choice for the condition. Sample
/// points approach excluded points and the boundary geometrically; a
/// certificate is returned once a violating tuple exists and the residual has
/// grown at `confirm_depths` consecutive depths. A0 and A1 delegate to their
/// checkers.
SearchOutcome counterexample_search(const PhiFamily& family, ConditionId id, double beta_floor, double h_sup_cap,
                                    double sigma, const SamplePlan& plan, const SearchOptions& options = {});

/// Search mode of an A2-type check: counterexample_search first; if it is
/// exhausted, the witness is h = h_sup_cap·χ_Ω (or the envelope form on
/// unbounded domains) with β the infimum ratio on the plan.
ConditionReport search_A2(ConditionId id, const PhiFamily& family, double beta_floor, double h_sup_cap, double sigma,
                          const SamplePlan& plan, const SearchOptions& options = {});

struct SuiteOptions {
  double sigma = 1.0;
  double beta_floor = 1e-3;
  double h_sup_cap = 10.0;
  SearchOptions search{};
};

struct FormulationResult {
  Formulation formulation = Formulation::inverse_shifted;
  ConditionReport report;
  /// Formulation 5 also needs (A0) with the transported constant.
  std::optional<double> required_a0_beta;
  bool holds = false;
};

struct EdgeResult {
  std::string from;
  std::string to;
  bool tested = false;
  bool source_holds = false;
  bool target_holds = false;
  bool consistent = true;
  std::string note;
  std::optional<Witness> witness;
  std::optional<Violation> offending;
};

struct SuiteResult {
  /// "verification" when a bounded-domain witness exists, else "search".
  std::string mode;
  ConditionReport a0;
  std::optional<ConditionReport> a1;
  std::vector<FormulationResult> formulations;
  std::vector<EdgeResult> edges;
  /// Informational checks, e.g. A2old with h = σχ_Ω.
  std::vector<ConditionReport> extras;
  std::size_t inconsistencies = 0;

  [[nodiscard]] bool consistent() const { return inconsistencies == 0; }
};

/// Runs the five formulations with witnesses propagated by transform_witness
/// and checks the implication graph on the verdicts, plus A1 ⇒ A0 ∧ A2 on
/// bounded domains.
SuiteResult implication_suite(const PhiFamily& family, const SamplePlan& plan, const SuiteOptions& options = {});

}  // namespace orlicz
