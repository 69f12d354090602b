#include <cmath>

#include "doctest.h"
#include "orlicz/errors.hpp"
#include "orlicz/gallery.hpp"
#include "orlicz/phi_core.hpp"
#include "support.hpp"

using namespace orlicz;
using orlicz::test::scalar_family;

TEST_SUITE("phi_core") {
  TEST_CASE("evaluate on gallery families") {
    const auto ball = gallery::unit_ball(2);
    CHECK(evaluate(gallery::orlicz_power(2, ball), Point{0.3, 0.1}, 3.0).value() == doctest::Approx(9.0));

    const auto punctured = gallery::punctured_unit_ball(2);
    CHECK(evaluate(gallery::punctured_example(punctured), Point{0.25, 0.0}, 1.0).value() == doctest::Approx(4.0));

    const auto step = gallery::step(1.0, ball);
    CHECK(evaluate(step, Point{0.0, 0.0}, 2.0).is_infinite());
    CHECK(evaluate(step, Point{0.0, 0.0}, 0.5).value() == 0.0);
  }

  TEST_CASE("evaluate rejects inadmissible arguments") {
    const auto phi = gallery::punctured_example(gallery::punctured_unit_ball(2));
    CHECK_THROWS_AS((void)evaluate(phi, Point{0.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS((void)evaluate(phi, Point{2.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS((void)evaluate(phi, Point{0.5, 0.0}, -1.0), DomainError);
  }

  TEST_CASE("classify") {
    const auto ball = gallery::unit_ball(2);
    const auto plan = make_plan(ball);
    const auto square = classify(gallery::orlicz_power(2, ball), plan);
    CHECK(square.classification == Classification::strong);
    CHECK(square.violations.empty());

    const auto punctured = gallery::punctured_unit_ball(2);
    const auto example = classify(gallery::punctured_example(punctured), make_plan(punctured));
    CHECK(example.classification == Classification::strong);
    CHECK(example.violations.empty());

    const auto root = classify(scalar_family("sqrt", [](double t) { return std::sqrt(t); }, ball), plan);
    CHECK(root.classification == Classification::not_phi);
    bool ratio_flagged = false;
    for (const auto& v : root.violations) ratio_flagged = ratio_flagged || v.axiom == Axiom::almost_increasing_ratio;
    CHECK(ratio_flagged);

    const auto step = classify(gallery::step(1.0, ball), plan);
    CHECK(step.classification == Classification::weak);
    CHECK(step.violations.empty());
  }

  TEST_CASE("classify flags a non-vanishing and a decreasing family") {
    const auto ball = gallery::unit_ball(1);
    const auto plan = make_plan(ball);
    const auto shifted = classify(scalar_family("1+t", [](double t) { return 1.0 + t; }, ball), plan);
    CHECK(shifted.classification == Classification::not_phi);
    const auto bump = classify(scalar_family("bump", [](double t) { return t < 1 ? t : (t < 2 ? 1.0 / t : t * t); }, ball), plan);
    CHECK(bump.classification == Classification::not_phi);
  }

  TEST_CASE("growth estimates") {
    const auto ball = gallery::unit_ball(2);
    const auto plan = make_plan(ball);
    const auto square = estimate_growth(gallery::orlicz_power(2, ball), 2, 2, plan);
    CHECK(square.ainc.constant == doctest::Approx(1.0));
    CHECK(square.ainc.holds);
    CHECK(square.adec.holds);

    const auto dp = gallery::double_phase(2, 4, gallery::Weight::constant, 1.0, ball);
    const auto g = estimate_growth(dp, 2, 4, plan);
    CHECK(g.ainc.constant == doctest::Approx(1.0));
    CHECK(g.adec.constant == doctest::Approx(1.0));
    CHECK(g.ainc.holds);
    CHECK(g.adec.holds);

    const auto punctured = gallery::punctured_unit_ball(2);
    const auto ex = estimate_adec(gallery::punctured_example(punctured), 1.0, make_plan(punctured));
    CHECK_FALSE(ex.holds);
  }

  TEST_CASE("equivalence certificates") {
    const auto ball = gallery::unit_ball(1);
    const auto plan = make_plan(ball);
    const auto phi = gallery::orlicz_power(2, ball);
    for (auto kind : {EquivalenceKind::valuewise, EquivalenceKind::argumentwise}) {
      const auto same = check_equivalence(phi, phi, kind, plan);
      CHECK(same.holds);
      CHECK(same.certificate.constant == doctest::Approx(1.0));
    }

    const auto twice = scalar_family("2t^2", [](double t) { return 2 * t * t; }, ball);
    const auto arg = check_equivalence(phi, twice, EquivalenceKind::argumentwise, plan);
    CHECK(arg.holds);
    CHECK(arg.certificate.constant == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    const auto cube = gallery::orlicz_power(3, ball);
    CHECK_FALSE(check_equivalence(phi, cube, EquivalenceKind::valuewise, plan).holds);
    const auto cube_arg = check_equivalence(phi, cube, EquivalenceKind::argumentwise, plan);
    CHECK_FALSE(cube_arg.holds);
    REQUIRE(cube_arg.violation.has_value());
  }

  TEST_CASE("gallery parameter validation") {
    const auto ball = gallery::unit_ball(2);
    CHECK_THROWS_AS(gallery::orlicz_power(0.5, ball), UsageError);
    CHECK_THROWS_AS(gallery::double_phase(4, 2, gallery::Weight::linear, 1, ball), UsageError);
    CHECK_THROWS_AS(gallery::double_phase(2, 4, gallery::Weight::linear, -1, ball), UsageError);
    CHECK_THROWS_AS(gallery::punctured_example(ball), UsageError);
    CHECK_THROWS_AS(gallery::parse_weight("cubic"), UsageError);
  }
}
