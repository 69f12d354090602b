#include "orlicz/phi_family.hpp"

#include <cmath>

namespace orlicz {

std::string to_string(Strength s) { return s == Strength::strong ? "strong" : "weak"; }

PhiFamily::PhiFamily(std::string name, Evaluator evaluator, SpatialDomain domain, PhiTraits traits)
    : name_(std::move(name)), evaluator_(std::move(evaluator)), domain_(std::move(domain)), traits_(traits) {
  if (!evaluator_) throw UsageError("PhiFamily: evaluator is empty");
  if (!(traits_.ainc_constant >= 1.0)) throw UsageError("PhiFamily: ainc constant must be >= 1");
  for (const auto& bound : {traits_.ainc_p, traits_.adec_q}) {
    if (bound && (!(bound->exponent > 0.0) || !(bound->constant >= 1.0))) {
      throw UsageError("PhiFamily: growth exponents must be > 0 with constants >= 1");
    }
  }
}

Extended PhiFamily::evaluate(const Point& x, double t) const {
  if (!(t >= 0.0)) throw DomainError("evaluate: t must be nonnegative");
  if (!domain_.contains(x)) throw DomainError("evaluate: " + to_string(x) + " is outside " + domain_.describe());
  if (domain_.is_excluded(x)) throw DomainError("evaluate: " + to_string(x) + " is an excluded point");
  return evaluator_(x, t);
}

PhiFamily PhiFamily::with_domain(SpatialDomain domain) const {
  return PhiFamily(name_, evaluator_, std::move(domain), traits_);
}

Extended evaluate(const PhiFamily& family, const Point& x, double t) { return family.evaluate(x, t); }

}  // namespace orlicz
