#pragma once

#include <string>
#include <vector>

#include "orlicz/domain.hpp"

namespace orlicz {

/// Log-spaced grid description; `points` counts the positive nodes, 0 is prepended.
struct GridSpec {
  double min = 1e-8;
  double max = 1e8;
  int points = 401;
};

/// Grid nodes of `spec`, strictly increasing, starting with 0.
std::vector<double> log_grid(const GridSpec& spec);

/// Doubles the node density and widens the span by one decade on each side.
GridSpec refined(const GridSpec& spec);

/// A sampled point of Ω. Depth 0 marks the base lattice; depth d >= 1 marks a
/// point placed 2^-d of the way toward an excluded point or the boundary.
struct SamplePoint {
  Point x;
  int depth = 0;
};

struct Ball {
  Point center;
  double radius = 0.0;
  double measure = 0.0;
};

struct PlanOptions {
  GridSpec t_grid{};
  GridSpec tau_grid{};
  int refinement_depth = 24;
  /// Lattice points per half-axis; 0 picks a dimension-dependent default.
  int lattice_half_count = 0;
  /// Number of radius levels 2^-k in the (A1) ball family; 0 picks a default.
  int ball_levels = 0;
  /// Half-width of the sampled window on unbounded axes.
  double unbounded_extent = 4.0;
};

/// Finite stand-in for "a.e. x, y ∈ Ω" and "every t".
struct SamplePlan {
  std::vector<SamplePoint> x_points;
  std::vector<double> t_grid;
  std::vector<double> tau_grid;
  GridSpec t_spec;
  GridSpec tau_spec;
  std::vector<Ball> ball_family;
  int refinement_depth = 0;

  [[nodiscard]] std::string summary() const;
};

/// Default plan for a domain: lattice points, geometric approach points toward
/// every excluded point and toward the boundary (or infinity), log grids, and
/// the (A1) ball family.
SamplePlan make_plan(const SpatialDomain& domain, const PlanOptions& options = {});

/// Same x points and balls, t and τ grids replaced by their refinements.
SamplePlan refine_grids(const SamplePlan& plan);

/// The new sample points that appear at refinement depth d >= 1.
std::vector<Point> approach_points(const SpatialDomain& domain, int depth);

/// Sample points of Ω ∩ B at depth 0 (a stencil) or d >= 1 (approaching
/// excluded points inside B).
std::vector<Point> ball_points(const SpatialDomain& domain, const Ball& ball, int depth);

/// Checks grid ordering, zero/large-value anchors and ball measures; throws UsageError.
void validate(const SamplePlan& plan, const SpatialDomain& domain);

/// Values of `grid` in [lo, hi] plus the endpoints themselves, sorted and unique.
std::vector<double> grid_window(const std::vector<double>& grid, double lo, double hi);

}  // namespace orlicz
