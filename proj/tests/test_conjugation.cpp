#include <cmath>

#include "doctest.h"
#include "orlicz/conditions.hpp"
#include "orlicz/conjugation.hpp"
#include "orlicz/gallery.hpp"
#include "orlicz/phi_core.hpp"
#include "support.hpp"

using namespace orlicz;
using orlicz::test::reduced_plan;
using orlicz::test::scalar_family;

namespace {

ConjugateOptions light() {
  ConjugateOptions o;
  o.s_grid = GridSpec{1e-6, 1e6, 161};
  return o;
}

PlanOptions tiny_plan() {
  PlanOptions o = reduced_plan(41, 2);
  o.lattice_half_count = 2;
  return o;
}

}  // namespace

TEST_SUITE("conjugation") {
  TEST_CASE("closed forms") {
    const auto ball = gallery::unit_ball(1);
    const Point o{0.0};
    const auto half_square = scalar_family("t^2/2", [](double t) { return 0.5 * t * t; }, ball);
    CHECK(conjugate(half_square, o, 3.0).value() == doctest::Approx(4.5).epsilon(1e-9));

    const auto linear = gallery::orlicz_power(1, ball);
    CHECK(conjugate(linear, o, 0.5).value() == 0.0);
    CHECK(conjugate(linear, o, 2.0).is_infinite());

    const auto quartic = scalar_family("t^4/4", [](double t) { return std::pow(t, 4) / 4; }, ball);
    CHECK(conjugate(quartic, o, 1.0).value() == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(conjugate(quartic, o, 0.0).value() == 0.0);

    const auto example = gallery::punctured_example(gallery::punctured_unit_ball(2));
    for (const Point& x : {Point{0.5, 0.0}, Point{0.0, 0.01}, Point{-0.3, 0.4}}) {
      for (double t : {0.1, 1.0, 17.0}) {
        CHECK(conjugate(example, x, t).value() == doctest::Approx(x.norm() * t * t / 4).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("Fenchel-Young and monotonicity on samples") {
    const auto ball = gallery::unit_ball(2);
    const auto plan = make_plan(ball, reduced_plan(61, 4));
    const Conjugator star(light());
    for (const auto& phi : {gallery::orlicz_power(2, ball), gallery::variable_exponent(2, 4, ball),
                            gallery::double_phase(2, 4, gallery::Weight::linear, 1.0, ball), gallery::step(1.0, ball)}) {
      for (std::size_t k = 0; k < plan.x_points.size(); k += 7) {
        const Point& x = plan.x_points[k].x;
        double prev = 0.0;
        for (double t : plan.t_grid) {
          const double c = star(phi, x, t);
          CHECK(c >= prev);
          prev = c;
          for (double s : plan.t_grid) {
            const double rhs = phi(x, s) + c;
            if (!(s * t <= rhs + 1e-9 * (1 + s * t))) FAIL_CHECK("Fenchel-Young fails at s=" << s << " t=" << t);
          }
        }
      }
    }
  }

  TEST_CASE("step family conjugate is linear") {
    const auto ball = gallery::unit_ball(1);
    const auto step = gallery::step(2.0, ball);
    for (double t : {0.0, 0.5, 3.0}) CHECK(conjugate(step, Point{0.0}, t).value() == doctest::Approx(2.0 * t));
  }

  TEST_CASE("biconjugate") {
    const auto ball = gallery::unit_ball(1);
    auto po = reduced_plan(41, 1);
    po.lattice_half_count = 1;
    const auto plan = make_plan(ball, po);
    const auto half_square = scalar_family("t^2/2", [](double t) { return 0.5 * t * t; }, ball);
    const auto bi = conjugate_family(conjugate_family(half_square, light()), light());
    const auto r = check_equivalence(half_square, bi, EquivalenceKind::valuewise, plan);
    CHECK(r.holds);
    CHECK(r.certificate.constant <= 1 + 1e-6);

    const auto quartic = scalar_family("t^4/4", [](double t) { return std::pow(t, 4) / 4; }, ball);
    const auto q_star = conjugate_family(quartic, light());
    const auto closed = scalar_family("3/4 t^(4/3)", [](double t) { return 0.75 * std::pow(t, 4.0 / 3.0); }, ball);
    const auto rq = check_equivalence(q_star, closed, EquivalenceKind::valuewise, plan);
    CHECK(rq.holds);
    CHECK(rq.certificate.constant <= 1.01);
  }

  TEST_CASE("conjugate family metadata") {
    const auto ball = gallery::unit_ball(1);
    const auto star = conjugate_family(gallery::orlicz_power(2, ball));
    CHECK(star.name() == "conjugate(orlicz_power(p=2))");
    CHECK(star.strength() == Strength::strong);
    CHECK(star.ainc_constant() == 1.0);
    CHECK(conjugate_family(gallery::orlicz_power(1, ball)).strength() == Strength::weak);
    CHECK(star(Point{0.0}, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("inverse product") {
    const auto ball = gallery::unit_ball(1);
    const auto plan = make_plan(ball, reduced_plan(41, 2));
    const auto square = inverse_product_check(gallery::orlicz_power(2, ball), plan);
    CHECK(square.constant == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(square.min_ratio == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(square.holds);

    const auto linear = inverse_product_check(gallery::orlicz_power(1, ball), plan);
    CHECK(std::isfinite(linear.constant));
    CHECK(linear.holds);
  }

  TEST_CASE("conjugate transfer of the max form") {
    const auto ball = gallery::unit_ball(1);
    const auto plan = make_plan(ball, tiny_plan());
    const auto phi = gallery::double_phase(2, 4, gallery::Weight::linear, 1.0, ball);
    const Witness w = construct_bounded_witness(phi, 1.0, plan);
    const auto source = check_A2_max(phi, w, plan);
    REQUIRE(source.holds());
    const auto product = inverse_product_check(phi, plan, light());
    REQUIRE(product.holds);
    const Witness transferred = conjugate_transfer_witness(w, product.constant);
    CHECK(transferred.beta == doctest::Approx(w.beta / (product.constant * product.constant)));
    const auto star = conjugate_family(phi, light());
    CHECK(check_A2_max(star, transferred, plan).holds());
    CHECK(check_A2_new(star, transferred, plan).holds());
  }
}
