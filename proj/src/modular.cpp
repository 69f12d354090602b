#include "orlicz/modular.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "orlicz/errors.hpp"
#include "orlicz/format.hpp"

namespace orlicz {

UniformGrid::UniformGrid(Point lo, Point hi, std::size_t per_axis)
    : lo_(std::move(lo)), hi_(std::move(hi)), per_axis_(per_axis) {
  const std::size_t n = lo_.dimension();
  if (n == 0 || n != hi_.dimension()) throw UsageError("grid: lo and hi must share a positive dimension");
  if (n > 3) throw UsageError("grid: at most three dimensions");
  if (per_axis_ == 0) throw UsageError("grid: need at least one cell per axis");
  size_ = 1;
  cell_volume_ = 1.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (!std::isfinite(lo_[a]) || !std::isfinite(hi_[a]) || !(lo_[a] < hi_[a])) {
      throw UsageError("grid: need finite lo < hi on every axis");
    }
    size_ *= per_axis_;
    cell_volume_ *= spacing(a);
  }
}

std::vector<std::size_t> UniformGrid::multi_index(std::size_t k) const {
  std::vector<std::size_t> idx(dimension());
  for (std::size_t a = 0; a < dimension(); ++a) {
    idx[a] = k % per_axis_;
    k /= per_axis_;
  }
  return idx;
}

Point UniformGrid::node(std::size_t k) const {
  std::vector<double> c(dimension());
  for (std::size_t a = 0; a < dimension(); ++a) {
    const std::size_t i = k % per_axis_;
    k /= per_axis_;
    c[a] = lo_[a] + (static_cast<double>(i) + 0.5) * spacing(a);
  }
  return Point(std::move(c));
}

SpatialDomain UniformGrid::as_domain(std::vector<Point> excluded) const {
  return SpatialDomain::box(lo_, hi_, std::move(excluded));
}

SampledFunction::SampledFunction(UniformGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw UsageError("sampled function: value count does not match the grid");
  for (double v : values_) {
    if (!std::isfinite(v)) throw UsageError("sampled function: values must be finite");
  }
}

SampledFunction SampledFunction::sample(const UniformGrid& grid, const std::function<double(const Point&)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) v[k] = f(grid.node(k));
  return SampledFunction(grid, std::move(v));
}

SampledFunction SampledFunction::zero(const UniformGrid& grid) {
  return SampledFunction(grid, std::vector<double>(grid.size(), 0.0));
}

SampledFunction SampledFunction::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::minus(const SampledFunction& other) const {
  if (!(grid_ == other.grid_)) throw UsageError("sampled function: grids differ");
  std::vector<double> v = values_;
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= other.values_[k];
  return SampledFunction(grid_, std::move(v));
}

bool SampledFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

std::optional<std::pair<Point, Point>> SampledFunction::support_box() const {
  const std::size_t n = grid_.dimension();
  std::vector<double> lo(n, kInfinity), hi(n, -kInfinity);
  bool any = false;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] == 0.0) continue;
    any = true;
    const Point p = grid_.node(k);
    for (std::size_t a = 0; a < n; ++a) {
      lo[a] = std::min(lo[a], p[a] - 0.5 * grid_.spacing(a));
      hi[a] = std::max(hi[a], p[a] + 0.5 * grid_.spacing(a));
    }
  }
  if (!any) return std::nullopt;
  return std::make_pair(Point(std::move(lo)), Point(std::move(hi)));
}

void SampledFunction::write_csv(std::ostream& os) const {
  const std::size_t n = grid_.dimension();
  for (std::size_t a = 0; a < n; ++a) os << 'x' << a << ',';
  os << "value\n";
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const Point p = grid_.node(k);
    for (std::size_t a = 0; a < n; ++a) os << format_number(p[a]) << ',';
    os << format_number(values_[k]) << '\n';
  }
}

SampledFunction SampledFunction::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw UsageError("csv: missing header");
  const std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 2) throw UsageError("csv: need at least one coordinate column and a value column");
  const std::size_t n = columns - 1;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw UsageError("csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != columns) throw UsageError("csv line " + std::to_string(lineno) + ": wrong column count");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw UsageError("csv: no data rows");

  std::vector<std::vector<double>> axes(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& r : rows) axes[a].push_back(r[a]);
    std::sort(axes[a].begin(), axes[a].end());
    axes[a].erase(std::unique(axes[a].begin(), axes[a].end()), axes[a].end());
  }
  const std::size_t m = axes[0].size();
  std::vector<double> lo(n), hi(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (axes[a].size() != m || m < 2) throw UsageError("csv: nodes do not form a square midpoint grid");
    const double h = (axes[a].back() - axes[a].front()) / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (std::abs(axes[a][i] - (axes[a].front() + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, h * m)) {
        throw UsageError("csv: node spacing is not uniform");
      }
    }
    lo[a] = axes[a].front() - 0.5 * h;
    hi[a] = axes[a].back() + 0.5 * h;
  }
  UniformGrid grid(Point(lo), Point(hi), m);
  if (rows.size() != grid.size()) throw UsageError("csv: expected " + std::to_string(grid.size()) + " rows");
  std::vector<double> values(grid.size(), 0.0);
  std::vector<bool> seen(grid.size(), false);
  for (const auto& r : rows) {
    std::size_t k = 0, stride = 1;
    for (std::size_t a = 0; a < n; ++a) {
      const auto it = std::lower_bound(axes[a].begin(), axes[a].end(), r[a]);
      k += static_cast<std::size_t>(it - axes[a].begin()) * stride;
      stride *= m;
    }
    if (seen[k]) throw UsageError("csv: duplicate node");
    seen[k] = true;
    values[k] = r[n];
  }
  return SampledFunction(std::move(grid), std::move(values));
}

namespace {

void require_admissible(const PhiFamily& family, const UniformGrid& grid) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point p = grid.node(k);
    if (!family.domain().admissible(p)) throw DomainError("modular: node " + to_string(p) + " is not admissible");
  }
}

double modular_scaled(const PhiFamily& family, const SampledFunction& f, const std::vector<Point>& nodes, double c) {
  double sum = 0.0;
  const double w = f.grid().cell_volume();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double v = std::abs(f[k]) * c;
    if (v == 0.0) continue;
    const double phi = family(nodes[k], v);
    if (std::isinf(phi)) return kInfinity;
    sum += w * phi;
  }
  return sum;
}

std::vector<Point> nodes_of(const UniformGrid& grid) {
  std::vector<Point> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out.push_back(grid.node(k));
  return out;
}

}  // namespace

Extended modular(const PhiFamily& family, const SampledFunction& f) {
  require_admissible(family, f.grid());
  return Extended(modular_scaled(family, f, nodes_of(f.grid()), 1.0));
}

double luxemburg_norm(const PhiFamily& family, const SampledFunction& f, const LuxemburgOptions& options) {
  if (!(options.lambda_min > 0.0 && options.lambda_max > options.lambda_min)) {
    throw UsageError("luxemburg_norm: bad bracket");
  }
  if (f.is_zero()) return 0.0;
  require_admissible(family, f.grid());
  const std::vector<Point> nodes = nodes_of(f.grid());
  auto fits = [&](double lambda) { return modular_scaled(family, f, nodes, 1.0 / lambda) <= 1.0; };
  double lo = options.lambda_min, hi = options.lambda_max;
  if (!fits(hi)) throw UnboundedError("luxemburg_norm: modular exceeds 1 at lambda = " + format_number(hi));
  if (fits(lo)) return lo;
  for (int it = 0; it < options.max_iterations && hi / lo - 1.0 > options.rel_tol; ++it) {
    const double mid = std::sqrt(lo * hi);
    (fits(mid) ? hi : lo) = mid;
  }
  return hi;
}

double Mollifier::profile(double r) const {
  const double z = r / epsilon;
  if (!(z < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - z * z));
}

DiscreteKernel discretize(const Mollifier& m, const UniformGrid& grid) {
  if (!(m.epsilon > 0.0) || std::isinf(m.epsilon)) throw UsageError("mollifier: epsilon must be positive");
  const std::size_t n = grid.dimension();
  std::vector<int> reach(n);
  for (std::size_t a = 0; a < n; ++a) reach[a] = static_cast<int>(std::floor(m.epsilon / grid.spacing(a)));
  DiscreteKernel k;
  std::vector<int> off(n);
  for (std::size_t a = 0; a < n; ++a) off[a] = -reach[a];
  double total = 0.0;
  while (true) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double d = off[a] * grid.spacing(a);
      r2 += d * d;
    }
    const double w = m.profile(std::sqrt(r2));
    if (w > 0.0) {
      k.offsets.push_back(off);
      k.weights.push_back(w);
      total += w;
    }
    std::size_t a = 0;
    while (a < n && ++off[a] > reach[a]) {
      off[a] = -reach[a];
      ++a;
    }
    if (a == n) break;
  }
  for (double& w : k.weights) w /= total;
  return k;
}

SampledFunction mollify(const SampledFunction& f, const Mollifier& m) {
  const UniformGrid& grid = f.grid();
  const std::size_t n = grid.dimension();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (f[k] == 0.0) continue;
    const Point p = grid.node(k);
    for (std::size_t a = 0; a < n; ++a) {
      const double margin = std::min(p[a] - grid.lo()[a], grid.hi()[a] - p[a]);
      if (margin < m.epsilon * (1.0 - 1e-12)) {
        throw UsageError("mollify: support of f comes within " + format_number(margin) +
                         " of the grid boundary, less than epsilon = " + format_number(m.epsilon));
      }
    }
  }
  const DiscreteKernel kernel = discretize(m, grid);
  const long N = static_cast<long>(grid.per_axis());
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::vector<std::size_t> idx = grid.multi_index(k);
    double acc = 0.0;
    for (std::size_t o = 0; o < kernel.weights.size(); ++o) {
      std::size_t src = 0, stride = 1;
      bool inside = true;
      for (std::size_t a = 0; a < n; ++a) {
        const long j = static_cast<long>(idx[a]) - kernel.offsets[o][a];
        if (j < 0 || j >= N) {
          inside = false;
          break;
        }
        src += static_cast<std::size_t>(j) * stride;
        stride *= grid.per_axis();
      }
      if (inside) acc += kernel.weights[o] * f[src];
    }
    out[k] = acc;
  }
  return SampledFunction(grid, std::move(out));
}

SampledFunction gradient(const SampledFunction& f, std::size_t axis) {
  const UniformGrid& grid = f.grid();
  if (axis >= grid.dimension()) throw UsageError("gradient: axis out of range");
  const std::size_t N = grid.per_axis();
  if (N < 2) throw UsageError("gradient: need at least two cells per axis");
  std::size_t stride = 1;
  for (std::size_t a = 0; a < axis; ++a) stride *= N;
  const double h = grid.spacing(axis);
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::size_t i = (k / stride) % N;
    if (i == 0) {
      out[k] = (f[k + stride] - f[k]) / h;
    } else if (i == N - 1) {
      out[k] = (f[k] - f[k - stride]) / h;
    } else {
      out[k] = (f[k + stride] - f[k - stride]) / (2.0 * h);
    }
  }
  return SampledFunction(grid, std::move(out));
}

namespace {

std::vector<Point> excluded_inside(const SpatialDomain& domain, const Point& lo, const Point& hi) {
  std::vector<Point> out;
  for (const Point& e : domain.excluded_points()) {
    bool inside = true;
    for (std::size_t a = 0; a < e.dimension(); ++a) inside = inside && lo[a] < e[a] && e[a] < hi[a];
    if (inside) out.push_back(e);
  }
  return out;
}

}  // namespace

DensityResult density_experiment(const PhiFamily& family, const SampledFunction& f,
                                 const std::vector<double>& eps_sequence, const DensityOptions& options) {
  if (eps_sequence.empty()) throw UsageError("density_experiment: empty epsilon sequence");
  for (std::size_t k = 0; k < eps_sequence.size(); ++k) {
    const double e = eps_sequence[k];
    if (!(e > 0.0 && e < 1.0)) throw UsageError("density_experiment: epsilon values must lie in (0,1)");
    if (k > 0 && !(e < eps_sequence[k - 1])) throw UsageError("density_experiment: epsilon must decrease");
  }
  if (family.domain().dimension() != f.grid().dimension()) {
    throw UsageError("density_experiment: family and function dimensions differ");
  }
  DensityResult r;
  const UniformGrid& grid = f.grid();
  const std::size_t n = grid.dimension();

  std::vector<double> lo(n), hi(n);
  if (auto support = f.support_box()) {
    for (std::size_t a = 0; a < n; ++a) {
      lo[a] = support->first[a] - 1.0;
      hi[a] = support->second[a] + 1.0;
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      lo[a] = grid.lo()[a];
      hi[a] = grid.hi()[a];
    }
  }
  r.envelope_lo = Point(lo);
  r.envelope_hi = Point(hi);
  const SpatialDomain envelope =
      SpatialDomain::box(r.envelope_lo, r.envelope_hi, excluded_inside(family.domain(), r.envelope_lo, r.envelope_hi));
  const PhiFamily on_envelope = family.with_domain(envelope);
  r.a1 = check_A1(on_envelope, make_plan(envelope, options.a1_plan), options.condition);
  r.precondition_ok = r.a1.holds();
  if (!r.precondition_ok) return r;

  const PhiFamily on_grid =
      family.with_domain(grid.as_domain(excluded_inside(family.domain(), grid.lo(), grid.hi())));
  r.f_norm = luxemburg_norm(on_grid, f, options.luxemburg);
  r.threshold = options.threshold_fraction * r.f_norm;
  std::vector<SampledFunction> grad_f;
  for (std::size_t a = 0; a < n; ++a) grad_f.push_back(gradient(f, a));
  for (double eps : eps_sequence) {
    const SampledFunction g = mollify(f, Mollifier{eps});
    DensityRow row;
    row.epsilon = eps;
    row.norm = luxemburg_norm(on_grid, g.minus(f), options.luxemburg);
    for (std::size_t a = 0; a < n; ++a) {
      row.gradient_norm += luxemburg_norm(on_grid, gradient(g, a).minus(grad_f[a]), options.luxemburg);
    }
    r.rows.push_back(row);
  }
  r.strictly_decreasing = true;
  r.decreasing_after_first = true;
  for (std::size_t k = 1; k < r.rows.size(); ++k) {
    const double prev = r.rows[k - 1].norm, cur = r.rows[k].norm;
    if (!(cur < prev)) r.strictly_decreasing = false;
    if (k >= 2 && !(cur < prev || (cur == 0.0 && prev == 0.0))) r.decreasing_after_first = false;
  }
  const double last = r.rows.back().norm;
  r.final_below_threshold = last < r.threshold || (r.f_norm == 0.0 && last == 0.0);
  return r;
}

}  // namespace orlicz
