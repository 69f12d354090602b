#include <cmath>

#include "doctest.h"
#include "orlicz/errors.hpp"
#include "orlicz/gallery.hpp"
#include "orlicz/inversion.hpp"
#include "support.hpp"

using namespace orlicz;
using orlicz::test::scalar_family;

TEST_SUITE("inversion") {
  TEST_CASE("closed forms") {
    const auto ball = gallery::unit_ball(2);
    const auto square = gallery::orlicz_power(2, ball);
    CHECK(left_inverse(square, Point{0.0, 0.0}, 4.0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(left_inverse(square, Point{0.0, 0.0}, 0.0) == 0.0);
    CHECK(left_inverse(gallery::step(1.0, ball), Point{0.0, 0.0}, 0.0) == 0.0);

    const auto example = gallery::punctured_example(gallery::punctured_unit_ball(2));
    CHECK(left_inverse(example, Point{0.25, 0.0}, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(left_inverse(example, Point{0.0, 0.04}, 9.0) == doctest::Approx(0.6).epsilon(1e-10));
  }

  TEST_CASE("jumps and plateaus resolve to the infimum") {
    const auto ball = gallery::unit_ball(1);
    const auto step = gallery::step(1.0, ball);
    CHECK(left_inverse(step, Point{0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(left_inverse(step, Point{0.0}, 1e6) == doctest::Approx(1.0).epsilon(1e-10));

    // φ = t on [0,1], flat at 1 on [1,2], then t - 1.
    const auto flat = scalar_family(
        "flat", [](double t) { return t <= 1 ? t : (t <= 2 ? 1.0 : t - 1.0); }, ball, Strength::weak);
    CHECK(left_inverse(flat, Point{0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(left_inverse(flat, Point{0.0}, 1.5) == doctest::Approx(2.5).epsilon(1e-10));
  }

  TEST_CASE("infinite tau and unbounded predicates") {
    const auto ball = gallery::unit_ball(1);
    const auto square = gallery::orlicz_power(2, ball);
    const auto r = left_inverse(InverseQuery{square, Point{0.0}, Extended::infinity()});
    CHECK(r.unbounded);
    CHECK(r.value == InverseOptions{}.bracket_cap);

    const auto capped = scalar_family("capped", [](double t) { return std::min(t, 5.0); }, ball, Strength::weak);
    CHECK_THROWS_AS((void)left_inverse(capped, Point{0.0}, 10.0), UnboundedError);
    CHECK(std::isinf(left_inverse_or_inf(capped, Point{0.0}, 10.0)));
    CHECK_THROWS_AS((void)left_inverse(square, Point{3.0}, 1.0), DomainError);
  }

  TEST_CASE("monotone and deterministic on the plan") {
    const auto ball = gallery::unit_ball(2);
    const auto plan = make_plan(ball);
    const auto dp = gallery::double_phase(2, 4, gallery::Weight::linear, 1.0, ball);
    for (std::size_t k = 0; k < plan.x_points.size(); k += 13) {
      const Point& x = plan.x_points[k].x;
      double prev = 0.0;
      for (double tau : plan.tau_grid) {
        const double v = left_inverse(dp, x, tau);
        CHECK(v >= prev);
        CHECK(v == left_inverse(dp, x, tau));
        prev = v;
      }
    }
  }

  TEST_CASE("dense-scan oracle") {
    const auto ball = gallery::unit_ball(1);
    const auto vexp = gallery::variable_exponent(2, 4, ball);
    std::vector<double> grid(10000);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 1e-5 * std::pow(1e10, static_cast<double>(i) / 9999.0);
    for (const Point& x : {Point{-0.5}, Point{0.0}, Point{0.7}}) {
      for (double tau : {1e-12, 1e-3, 0.5, 1.0, 7.0, 1e6}) {
        std::size_t k = 0;
        while (k < grid.size() && vexp(x, grid[k]) < tau) ++k;
        REQUIRE(k > 0);
        REQUIRE(k < grid.size());
        const double v = left_inverse(vexp, x, tau);
        CHECK(v >= grid[k - 1] - 1e-12);
        CHECK(v <= grid[k] + 1e-12);
      }
    }
  }

  TEST_CASE("zero plateau") {
    const auto ball = gallery::unit_ball(1);
    CHECK(zero_plateau(gallery::orlicz_power(2, ball), Point{0.0}).t0 == 0.0);
    const auto shifted = scalar_family("max(0,t-1)", [](double t) { return std::max(0.0, t - 1.0); }, ball);
    CHECK(zero_plateau(shifted, Point{0.0}).t0 == doctest::Approx(1.0).epsilon(1e-9));
    const auto punctured = gallery::punctured_unit_ball(2);
    const auto example = gallery::punctured_example(punctured);
    const auto plan = make_plan(punctured);
    for (const auto& sp : plan.x_points) CHECK(zero_plateau(example, sp.x).t0 == 0.0);
  }

  TEST_CASE("inverse identities") {
    const auto ball = gallery::unit_ball(2);
    const auto plan = make_plan(ball);
    const auto square = gallery::orlicz_power(2, ball);
    CHECK(square(Point{0.0, 0.0}, left_inverse(square, Point{0.0, 0.0}, 9.0)) == doctest::Approx(9.0).epsilon(1e-10));
    const auto dp = gallery::double_phase(2, 4, gallery::Weight::constant, 1.0, ball);
    CHECK(left_inverse(dp, Point{0.0, 0.0}, dp(Point{0.0, 0.0}, 1.3)) == doctest::Approx(1.3).epsilon(1e-10));

    for (const auto& phi : {square, dp, gallery::variable_exponent(2, 4, ball)}) {
      const auto r = verify_inverse_identities(phi, plan);
      CHECK(r.holds(1e-8));
      CHECK(r.forward_checked > 0);
      CHECK(r.backward_checked > 0);
    }

    const auto ball1 = gallery::unit_ball(1);
    const auto shifted = scalar_family("max(0,t-1)", [](double t) { return std::max(0.0, t - 1.0); }, ball1);
    CHECK(left_inverse(shifted, Point{0.0}, shifted(Point{0.0}, 0.5)) == 0.0);
    const auto r = verify_inverse_identities(shifted, make_plan(ball1));
    CHECK(r.backward_residual < 1e-8);
    CHECK(r.skipped > 0);
    // Just past the plateau end, φ(t) = t - 1 carries an absolute error near
    // 1e-16, so the forward identity is only resolvable for larger τ.
    for (double tau : {1.0, 10.0, 1e4}) {
      const double t = left_inverse(shifted, Point{0.0}, tau);
      CHECK(std::abs(shifted(Point{0.0}, t) - tau) / tau < 1e-8);
    }
  }

  TEST_CASE("inverse (aDec)_1 and doubling") {
    const auto ball = gallery::unit_ball(1);
    const auto plan = make_plan(ball);
    const auto square = inverse_adec1_check(gallery::orlicz_power(2, ball), plan);
    CHECK(square.constant == doctest::Approx(1.0));
    CHECK(square.doubling_holds);

    const auto linear = inverse_adec1_check(gallery::orlicz_power(1, ball), plan);
    CHECK(linear.doubling_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(linear.doubling_holds);

    const auto dp = inverse_adec1_check(gallery::double_phase(2, 4, gallery::Weight::constant, 1.0, ball), plan);
    CHECK(dp.constant <= 1.05);
    CHECK(dp.doubling_holds);
  }
}
