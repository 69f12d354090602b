#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "orlicz/conditions.hpp"
#include "orlicz/phi_family.hpp"

namespace orlicz {

/// Midpoint-rule nodes on an axis-aligned box split into `per_axis` cells per axis.
class UniformGrid {
 public:
  UniformGrid(Point lo, Point hi, std::size_t per_axis);

  [[nodiscard]] std::size_t dimension() const { return lo_.dimension(); }
  [[nodiscard]] std::size_t per_axis() const { return per_axis_; }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] const Point& lo() const { return lo_; }
  [[nodiscard]] const Point& hi() const { return hi_; }
  [[nodiscard]] double spacing(std::size_t axis) const { return (hi_[axis] - lo_[axis]) / per_axis_; }
  [[nodiscard]] double cell_volume() const { return cell_volume_; }
  [[nodiscard]] double measure() const { return cell_volume_ * static_cast<double>(size_); }
  /// Node k; axis 0 varies fastest.
  [[nodiscard]] Point node(std::size_t k) const;
  [[nodiscard]] std::vector<std::size_t> multi_index(std::size_t k) const;
  [[nodiscard]] SpatialDomain as_domain(std::vector<Point> excluded = {}) const;

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

 private:
  Point lo_, hi_;
  std::size_t per_axis_ = 0;
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
};

/// Values of a function at the nodes of a UniformGrid.
class SampledFunction {
 public:
  SampledFunction(UniformGrid grid, std::vector<double> values);
  static SampledFunction sample(const UniformGrid& grid, const std::function<double(const Point&)>& f);
  static SampledFunction zero(const UniformGrid& grid);

  [[nodiscard]] const UniformGrid& grid() const { return grid_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }
  [[nodiscard]] SampledFunction scaled(double c) const;
  /// this - other on the same grid.
  [[nodiscard]] SampledFunction minus(const SampledFunction& other) const;
  [[nodiscard]] bool is_zero() const;
  /// Bounding box of the nonzero nodes, widened by half a cell; empty for f ≡ 0.
  [[nodiscard]] std::optional<std::pair<Point, Point>> support_box() const;

  /// Columns x0[,x1],value with a header line.
  void write_csv(std::ostream& os) const;
  /// Inverse of write_csv; the node coordinates must form a uniform midpoint grid.
  static SampledFunction read_csv(std::istream& is);

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

/// Σ w_k φ(x_k, |f(x_k)|); +inf if any term is. Nodes must be admissible for the family.
Extended modular(const PhiFamily& family, const SampledFunction& f);

struct LuxemburgOptions {
  double lambda_min = 1e-12;
  double lambda_max = 1e12;
  int max_iterations = 200;
  double rel_tol = 1e-13;
};

/// inf{λ > 0 : modular(f/λ) <= 1} by geometric bisection; 0 for f ≡ 0.
/// Throws UnboundedError when the modular stays above 1 at lambda_max.
double luxemburg_norm(const PhiFamily& family, const SampledFunction& f, const LuxemburgOptions& options = {});

/// σ_ε(z) = c_ε exp(-1/(1 - |z/ε|²)) on |z| < ε.
struct Mollifier {
  double epsilon = 0.1;

  [[nodiscard]] double profile(double r) const;
};

/// Kernel weights on the grid offsets with |offset| < ε, normalized to sum 1.
struct DiscreteKernel {
  std::vector<std::vector<int>> offsets;
  std::vector<double> weights;
};
DiscreteKernel discretize(const Mollifier& m, const UniformGrid& grid);

/// Discrete convolution f ∗ σ_ε. Throws UsageError unless every nonzero node
/// lies at distance >= ε from the grid boundary.
SampledFunction mollify(const SampledFunction& f, const Mollifier& m);

/// ∂f/∂x_axis by central differences (one-sided at the edges).
SampledFunction gradient(const SampledFunction& f, std::size_t axis);

struct DensityOptions {
  /// Pass threshold as a fraction of ‖f‖.
  double threshold_fraction = 0.1;
  LuxemburgOptions luxemburg{};
  /// Plan for the (A1) precondition on the dilated support.
  PlanOptions a1_plan{};
  ConditionOptions condition{};
};

struct DensityRow {
  double epsilon = 0.0;
  double norm = 0.0;
  /// Σ_axis ‖∂(f∗σ_ε) - ∂f‖, reported only.
  double gradient_norm = 0.0;
};

struct DensityResult {
  ConditionReport a1;
  bool precondition_ok = false;
  double f_norm = 0.0;
  double threshold = 0.0;
  std::vector<DensityRow> rows;
  bool strictly_decreasing = false;
  /// Each entry after the first is below its predecessor (or both are 0).
  bool decreasing_after_first = false;
  bool final_below_threshold = false;
  /// The dilated support {dist(x, supp f) < 1}, as a box.
  Point envelope_lo, envelope_hi;

  [[nodiscard]] bool passed() const { return precondition_ok && decreasing_after_first && final_below_threshold; }
};

/// ‖f∗σ_ε - f‖ for each ε after checking (A1) on the dilated support of f.
/// The norms are not computed when the precondition fails.
DensityResult density_experiment(const PhiFamily& family, const SampledFunction& f,
                                 const std::vector<double>& eps_sequence, const DensityOptions& options = {});

}  // namespace orlicz
