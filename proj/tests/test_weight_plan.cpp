#include <cmath>
#include <numbers>

#include "doctest.h"
#include "orlicz/errors.hpp"
#include "orlicz/format.hpp"
#include "orlicz/gallery.hpp"
#include "orlicz/sample_plan.hpp"
#include "orlicz/weight.hpp"

using namespace orlicz;

TEST_SUITE("plan") {
  TEST_CASE("log grid") {
    const auto g = log_grid(GridSpec{});
    REQUIRE(g.size() == 402);
    CHECK(g.front() == 0.0);
    CHECK(g[1] == doctest::Approx(1e-8));
    CHECK(g.back() == doctest::Approx(1e8));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    const auto r = refined(GridSpec{});
    CHECK(r.points == 901);  // 50 gaps per decade over 18 decades
    CHECK(r.min == doctest::Approx(1e-9));
    CHECK(r.max == doctest::Approx(1e9));
  }

  TEST_CASE("plans approach excluded points and the boundary") {
    const auto punctured = gallery::punctured_unit_ball(2);
    const auto plan = make_plan(punctured);
    validate(plan, punctured);
    double closest = 1.0, outermost = 0.0;
    for (const auto& sp : plan.x_points) {
      CHECK(punctured.admissible(sp.x));
      closest = std::min(closest, sp.x.norm());
      outermost = std::max(outermost, sp.x.norm());
    }
    CHECK(closest < 1e-7);
    CHECK(outermost > 1 - 1e-7);
    CHECK_FALSE(plan.ball_family.empty());
    CHECK(plan.refinement_depth == 24);
  }

  TEST_CASE("plans are deterministic") {
    const auto ball = gallery::unit_ball(2);
    const auto a = make_plan(ball), b = make_plan(ball);
    REQUIRE(a.x_points.size() == b.x_points.size());
    for (std::size_t i = 0; i < a.x_points.size(); ++i) CHECK(a.x_points[i].x == b.x_points[i].x);
    CHECK(a.summary() == b.summary());
  }

  TEST_CASE("grid window") {
    const std::vector<double> g = {0, 0.1, 1, 10};
    const auto w = grid_window(g, 0.5, 5);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == 0.5);
    CHECK(w[1] == 1);
    CHECK(w[2] == 5);
  }

  TEST_CASE("domains") {
    const auto box = SpatialDomain::box(Point{-1, 0}, Point{1, 3});
    CHECK(box.measure() == doctest::Approx(6.0));
    CHECK(box.contains(Point{0, 1}));
    CHECK_FALSE(box.contains(Point{0, 3}));
    const auto ball = SpatialDomain::ball(Point{0, 0}, 2.0);
    CHECK(ball.measure() == doctest::Approx(4 * std::numbers::pi));
    CHECK(SpatialDomain::whole_space(3).measure() == INFINITY);
    CHECK_THROWS_AS(SpatialDomain::ball(Point{0}, -1.0), UsageError);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(INFINITY) == "inf");
  }
}

TEST_SUITE("weight") {
  TEST_CASE("indicator and envelope bounds") {
    const auto ball = gallery::unit_ball(2);
    const auto h = WeightFunction::indicator(2.0, ball);
    CHECK(h(Point{0.1, 0.2}) == 2.0);
    CHECK(h.sup_bound() == 2.0);
    CHECK(h.l1_bound() == doctest::Approx(2 * std::numbers::pi));
    CHECK(h.describe() == "2*chi_Omega");
    CHECK(WeightFunction::indicator(0.0, ball).kind() == WeightKind::zero);
    CHECK_THROWS_AS(WeightFunction::indicator(1.0, SpatialDomain::whole_space(2)), UsageError);

    const auto e = WeightFunction::envelope(3.0, 1);
    CHECK(e(Point{0.5}) == 3.0);
    CHECK(e(Point{2.0}) == doctest::Approx(3.0 / 4.0));
    CHECK(e.l1_bound() == doctest::Approx(3.0 * 2 * 2));
  }

  TEST_CASE("scaling and capping") {
    const auto ball = gallery::unit_ball(1);
    const auto h = WeightFunction::indicator(2.0, ball);
    const auto s = h.scaled(0.25);
    CHECK(s.sup_bound() == 0.5);
    CHECK(s.l1_bound() == doctest::Approx(1.0));
    CHECK(s.kind() == WeightKind::indicator);
    const auto c = h.capped(0.5);
    CHECK(c(Point{0.0}) == 0.5);
    CHECK(c.kind() == WeightKind::indicator);
    CHECK(h.capped(5.0).sup_bound() == 2.0);

    const auto e = WeightFunction::envelope(2.0, 1).capped(1.0);
    CHECK(e.kind() == WeightKind::custom);
    CHECK(e(Point{0.1}) == 1.0);
    CHECK(e(Point{4.0}) == doctest::Approx(2.0 / 16.0));
  }

  TEST_CASE("witness validation") {
    const auto ball = gallery::unit_ball(1);
    const auto plan = make_plan(ball);
    Witness w;
    w.h = WeightFunction::indicator(1.0, ball);
    CHECK_NOTHROW(w.validate(&plan));
    w.beta = 0.0;
    CHECK_THROWS_AS(w.validate(), UsageError);
    w.beta = 1.5;
    CHECK_THROWS_AS(w.validate(), UsageError);
    w.beta = 1.0;
    w.sigma = -1;
    CHECK_THROWS_AS(w.validate(), UsageError);
    w.sigma = 1;
    w.h = WeightFunction::custom([](const Point&) { return 3.0; }, 1.0, 1.0, "lying");
    CHECK_THROWS_AS(w.validate(&plan), UsageError);
  }
}
