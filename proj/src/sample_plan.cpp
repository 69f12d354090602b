#include "orlicz/sample_plan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

std::vector<double> log_grid(const GridSpec& spec) {
  if (!(spec.min > 0.0) || !(spec.max > spec.min) || spec.points < 2) {
    throw UsageError("log_grid: need 0 < min < max and at least two points");
  }
  const double lo = std::log10(spec.min);
  const double span = std::log10(spec.max) - lo;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(spec.points) + 1);
  grid.push_back(0.0);
  for (int k = 0; k < spec.points; ++k) {
    // k * span / (n-1) keeps integer decades exact when the spacing divides them.
    grid.push_back(std::pow(10.0, lo + span * k / (spec.points - 1)));
  }
  grid.back() = spec.max;
  grid[1] = spec.min;
  return grid;
}

GridSpec refined(const GridSpec& spec) {
  const double decades = std::log10(spec.max / spec.min);
  const double per_decade = (spec.points - 1) / decades;
  GridSpec out{spec.min / 10.0, spec.max * 10.0, 0};
  out.points = static_cast<int>(std::lround(2.0 * per_decade * (decades + 2.0))) + 1;
  return out;
}

namespace {

int default_lattice_half_count(std::size_t n) { return n == 1 ? 10 : (n == 2 ? 5 : 3); }
int default_ball_levels(std::size_t n) { return n == 1 ? 6 : (n == 2 ? 3 : 2); }

double axis_half_width(const SpatialDomain& domain, std::size_t axis, double unbounded_extent) {
  const double hw = domain.half_width(axis);
  return std::isfinite(hw) ? hw : unbounded_extent;
}

// Cartesian lattice center + hw_i * j_i / m, j_i ∈ (-m, m).
std::vector<Point> lattice(const SpatialDomain& domain, int m, double unbounded_extent) {
  const std::size_t n = domain.dimension();
  std::vector<Point> out;
  std::vector<int> idx(n, -m + 1);
  while (true) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = domain.center()[i] + axis_half_width(domain, i, unbounded_extent) * idx[i] / m;
    }
    Point p(std::move(c));
    if (domain.admissible(p)) out.push_back(std::move(p));
    std::size_t i = 0;
    while (i < n && ++idx[i] > m - 1) idx[i++] = -m + 1;
    if (i == n) break;
  }
  return out;
}

double approach_radius(const SpatialDomain& domain, const Point& e) {
  const double hw = domain.half_width(0);
  if (!std::isfinite(hw)) return 0.5;
  double room = domain.shape() == Shape::ball ? domain.radius() - e.distance(domain.center())
                                              : std::min(e[0] - domain.lo()[0], domain.hi()[0] - e[0]);
  return 0.5 * std::min(room, domain.scale());
}

}  // namespace

std::vector<Point> approach_points(const SpatialDomain& domain, int depth) {
  std::vector<Point> out;
  const double step = std::ldexp(1.0, -depth);
  auto push = [&](Point p) {
    if (domain.admissible(p) && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  for (const Point& e : domain.excluded_points()) {
    const double r = approach_radius(domain, e) * step;
    push(e.shifted(0, r));
    push(e.shifted(0, -r));
  }
  const double hw = domain.half_width(0);
  if (std::isfinite(hw)) {
    push(domain.center().shifted(0, hw * (1.0 - step)));
    push(domain.center().shifted(0, -hw * (1.0 - step)));
  } else {
    push(domain.center().shifted(0, std::ldexp(1.0, depth)));
    push(domain.center().shifted(0, -std::ldexp(1.0, depth)));
  }
  return out;
}

std::vector<Point> ball_points(const SpatialDomain& domain, const Ball& ball, int depth) {
  std::vector<Point> out;
  auto push = [&](Point p) {
    if (p.distance(ball.center) < ball.radius && domain.admissible(p) &&
        std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(std::move(p));
    }
  };
  if (depth == 0) {
    push(ball.center);
    for (std::size_t axis = 0; axis < ball.center.dimension(); ++axis) {
      for (double frac : {0.25, 0.5, 0.75}) {
        push(ball.center.shifted(axis, frac * ball.radius));
        push(ball.center.shifted(axis, -frac * ball.radius));
      }
    }
    return out;
  }
  const double step = std::ldexp(1.0, -depth);
  for (const Point& e : domain.excluded_points()) {
    const double room = ball.radius - e.distance(ball.center);
    if (!(room > 0.0)) continue;
    const double r = 0.5 * room * step;
    push(e.shifted(0, r));
    push(e.shifted(0, -r));
  }
  return out;
}

SamplePlan make_plan(const SpatialDomain& domain, const PlanOptions& options) {
  SamplePlan plan;
  const std::size_t n = domain.dimension();
  const int m = options.lattice_half_count > 0 ? options.lattice_half_count : default_lattice_half_count(n);
  for (Point& p : lattice(domain, m, options.unbounded_extent)) plan.x_points.push_back({std::move(p), 0});
  plan.refinement_depth = options.refinement_depth;
  for (int d = 1; d <= options.refinement_depth; ++d) {
    for (Point& p : approach_points(domain, d)) plan.x_points.push_back({std::move(p), d});
  }
  plan.t_spec = options.t_grid;
  plan.tau_spec = options.tau_grid;
  plan.t_grid = log_grid(plan.t_spec);
  plan.tau_grid = log_grid(plan.tau_spec);

  // Ball family: radii 2^-k with |B| <= 1, centers on a lattice of spacing r,
  // plus balls centered at every excluded point.
  const double omega = unit_ball_volume(n);
  int k = 0;
  while (omega * std::pow(std::ldexp(1.0, -k), static_cast<double>(n)) > 1.0) ++k;
  const int levels = options.ball_levels > 0 ? options.ball_levels : default_ball_levels(n);
  for (int level = 0; level < levels; ++level, ++k) {
    const double r = std::ldexp(1.0, -k);
    const double measure = omega * std::pow(r, static_cast<double>(n));
    std::vector<int> half(n);
    for (std::size_t i = 0; i < n; ++i) {
      half[i] = static_cast<int>(std::floor(axis_half_width(domain, i, options.unbounded_extent) / r));
    }
    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = -half[i];
    while (true) {
      std::vector<double> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = domain.center()[i] + r * idx[i];
      Point center(std::move(c));
      if (domain.contains(center)) plan.ball_family.push_back({center, r, measure});
      std::size_t i = 0;
      while (i < n && ++idx[i] > half[i]) {
        idx[i] = -half[i];
        ++i;
      }
      if (i == n) break;
    }
    for (const Point& e : domain.excluded_points()) {
      const bool present = std::any_of(plan.ball_family.begin(), plan.ball_family.end(),
                                       [&](const Ball& b) { return b.center == e && b.radius == r; });
      if (!present) plan.ball_family.push_back({e, r, measure});
    }
  }
  return plan;
}

SamplePlan refine_grids(const SamplePlan& plan) {
  SamplePlan out = plan;
  out.t_spec = refined(plan.t_spec);
  out.tau_spec = refined(plan.tau_spec);
  out.t_grid = log_grid(out.t_spec);
  out.tau_grid = log_grid(out.tau_spec);
  return out;
}

void validate(const SamplePlan& plan, const SpatialDomain& domain) {
  if (plan.x_points.empty()) throw UsageError("plan: no x points");
  for (const SamplePoint& sp : plan.x_points) {
    if (!domain.admissible(sp.x)) throw UsageError("plan: " + to_string(sp.x) + " is not admissible");
  }
  for (const auto* grid : {&plan.t_grid, &plan.tau_grid}) {
    if (grid->empty() || grid->front() != 0.0) throw UsageError("plan: grids must start at 0");
    if (!std::is_sorted(grid->begin(), grid->end()) ||
        std::adjacent_find(grid->begin(), grid->end()) != grid->end()) {
      throw UsageError("plan: grids must be strictly increasing");
    }
    if (grid->back() < 1e6) throw UsageError("plan: grids must reach at least 1e6");
  }
  for (const Ball& b : plan.ball_family) {
    if (!(b.measure <= 1.0)) throw UsageError("plan: ball with |B| > 1");
  }
}

std::vector<double> grid_window(const std::vector<double>& grid, double lo, double hi) {
  std::vector<double> out;
  if (lo > hi) return out;
  out.push_back(lo);
  for (double v : grid) {
    if (v > lo && v < hi) out.push_back(v);
  }
  if (hi > lo) out.push_back(hi);
  return out;
}

std::string SamplePlan::summary() const {
  std::ostringstream os;
  os.precision(17);
  os << "x_points=" << x_points.size() << " depth=" << refinement_depth << " t_grid=[0," << t_spec.min << ".."
     << t_spec.max << "]x" << t_spec.points << " tau_grid=[0," << tau_spec.min << ".." << tau_spec.max << "]x"
     << tau_spec.points << " balls=" << ball_family.size();
  return os.str();
}

}  // namespace orlicz
