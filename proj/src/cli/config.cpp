#include "orlicz/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "orlicz/format.hpp"
#include "orlicz/gallery.hpp"

namespace orlicz::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int level = 0;
  for (char c : s) {
    if (c == '(') ++level;
    if (c == ')') --level;
    if (c == sep && level == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::optional<double> to_number(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (used != t.size()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Fields {
 public:
  Fields(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  [[nodiscard]] bool has(const std::string& key) const { return entries_.count(key) > 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
    throw ConfigError(where + ": field '" + key + "': " + what);
  }

  [[nodiscard]] std::string text(const std::string& key) const { return entries_.at(key).value; }

  void get(const std::string& key, std::string& out) const {
    if (has(key)) out = text(key);
  }

  void get(const std::string& key, double& out, const std::function<bool(double)>& ok, const std::string& rule) const {
    if (!has(key)) return;
    const auto v = to_number(text(key));
    if (!v) fail(key, "expected a number, got '" + text(key) + "'");
    if (!ok(*v)) fail(key, "value " + text(key) + " out of range (" + rule + ")");
    out = *v;
  }

  template <class Int>
  void get_int(const std::string& key, Int& out, long long lo, long long hi) const {
    if (!has(key)) return;
    const auto v = to_number(text(key));
    if (!v || std::floor(*v) != *v) fail(key, "expected an integer, got '" + text(key) + "'");
    if (*v < static_cast<double>(lo) || *v > static_cast<double>(hi)) {
      fail(key, "value " + text(key) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    out = static_cast<Int>(*v);
  }

  void get_list(const std::string& key, std::vector<double>& out) const {
    if (!has(key)) return;
    std::vector<double> values;
    for (const std::string& item : split_top(text(key), ',')) {
      const auto v = to_number(item);
      if (!v) fail(key, "expected a comma-separated list of numbers, got '" + text(key) + "'");
      values.push_back(*v);
    }
    out = std::move(values);
  }

  void get_points(const std::string& key, std::vector<std::vector<double>>& out) const {
    if (!has(key)) return;
    std::vector<std::vector<double>> points;
    for (const std::string& item : split_top(text(key), ';')) {
      if (item.empty()) continue;
      std::vector<double> coords;
      for (const std::string& c : split_top(item, ',')) {
        const auto v = to_number(c);
        if (!v) fail(key, "expected points 'x1,x2; y1,y2', got '" + text(key) + "'");
        coords.push_back(*v);
      }
      points.push_back(std::move(coords));
    }
    out = std::move(points);
  }

 private:
  std::map<std::string, Entry> entries_;
  std::string source_;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "name",
      "family",
      "family.p",
      "family.q",
      "family.p_min",
      "family.p_max",
      "family.weight",
      "family.w_max",
      "family.threshold",
      "domain",
      "domain.dimension",
      "domain.center",
      "domain.radius",
      "domain.lo",
      "domain.hi",
      "domain.excluded",
      "plan.depth",
      "plan.t_min",
      "plan.t_max",
      "plan.t_points",
      "plan.tau_min",
      "plan.tau_max",
      "plan.tau_points",
      "plan.lattice",
      "plan.ball_levels",
      "plan.extent",
      "conditions",
      "expect",
      "witness.mode",
      "witness.beta",
      "witness.h",
      "witness.sigma",
      "search.beta_floor",
      "search.h_cap",
      "search.max_depth",
      "search.max_tuples",
      "function",
      "function.center",
      "function.radius",
      "function.amplitude",
      "function.path",
      "grid.n",
      "grid.lo",
      "grid.hi",
      "density.eps",
      "density.threshold_fraction",
  };
  return keys;
}

WitnessMode parse_mode(const std::string& s) {
  if (s == "given") return WitnessMode::given;
  if (s == "search") return WitnessMode::search;
  throw ConfigError("witness mode must be 'given' or 'search', got '" + s + "'");
}

bool valid_level(const std::string& h) {
  if (h == "sigma" || h == "sigma/2") return true;
  const auto v = to_number(h);
  return v && *v >= 0.0 && std::isfinite(*v);
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : gallery::entries()) n.push_back(e.name);
    return n;
  }();
  return names;
}

}  // namespace

double resolve_level(const std::string& h, double sigma) {
  if (h == "sigma") return sigma;
  if (h == "sigma/2") return 0.5 * sigma;
  const auto v = to_number(h);
  if (!v || !(*v >= 0.0) || !std::isfinite(*v)) throw ConfigError("h level must be a number >= 0, sigma or sigma/2");
  return *v;
}

ConditionSpec parse_condition_spec(const std::string& text, const RunConfig& defaults) {
  const std::string item = trim(text);
  const auto open = item.find('(');
  const std::string name = trim(item.substr(0, open));
  ConditionSpec spec;
  try {
    spec.id = parse_condition(name);
  } catch (const UsageError&) {
    throw ConfigError("unknown condition '" + name + "' (A0, A1, A2new, A2old, A2phi, A2max, aIncP, aDecQ)");
  }
  spec.mode = defaults.witness_mode;
  spec.beta = defaults.witness_beta;
  spec.h = defaults.witness_h;

  bool explicit_mode = false;
  bool given_params = false;
  if (open != std::string::npos) {
    if (item.back() != ')') throw ConfigError("condition '" + item + "': missing ')'");
    const std::string args = item.substr(open + 1, item.size() - open - 2);
    for (const std::string& arg : split_top(args, ',')) {
      if (arg.empty()) continue;
      if (arg == "search" || arg == "given") {
        spec.mode = parse_mode(arg);
        explicit_mode = true;
        continue;
      }
      const auto eq = arg.find('=');
      if (eq == std::string::npos) throw ConfigError("condition '" + item + "': expected key=value, got '" + arg + "'");
      const std::string key = trim(arg.substr(0, eq));
      const std::string value = trim(arg.substr(eq + 1));
      const auto number = to_number(value);
      if (key == "h") {
        if (!valid_level(value)) throw ConfigError("condition '" + item + "': h must be a number >= 0, sigma or sigma/2");
        spec.h = value;
        given_params = true;
      } else if (key == "beta") {
        if (!number || !(*number > 0.0 && *number <= 1.0)) {
          throw ConfigError("condition '" + item + "': beta must lie in (0,1]");
        }
        spec.beta = *number;
        given_params = true;
      } else if (key == "sigma") {
        if (!number || !(*number > 0.0) || !std::isfinite(*number)) {
          throw ConfigError("condition '" + item + "': sigma must be positive and finite");
        }
        spec.sigma = *number;
      } else if ((key == "p" && spec.id == ConditionId::aIncP) || (key == "q" && spec.id == ConditionId::aDecQ)) {
        if (!number || !(*number > 0.0)) throw ConfigError("condition '" + item + "': exponent must be > 0");
        spec.exponent = *number;
      } else {
        throw ConfigError("condition '" + item + "': unknown argument '" + key + "'");
      }
    }
  }
  if (given_params && !explicit_mode) spec.mode = WitnessMode::given;
  if (given_params && spec.mode == WitnessMode::search) {
    throw ConfigError("condition '" + item + "': beta/h apply to given witnesses only");
  }

  std::string canonical = to_string(spec.id);
  std::vector<std::string> parts;
  const bool a2 = spec.id == ConditionId::A2new || spec.id == ConditionId::A2old || spec.id == ConditionId::A2phi ||
                  spec.id == ConditionId::A2max;
  if (a2) {
    if (spec.mode == WitnessMode::search) {
      parts.push_back("search");
    } else {
      parts.push_back("beta=" + format_number(spec.beta));
      parts.push_back("h=" + spec.h);
    }
    if (spec.sigma) parts.push_back("sigma=" + format_number(*spec.sigma));
  } else if (spec.exponent) {
    parts.push_back(std::string(spec.id == ConditionId::aIncP ? "p=" : "q=") + format_number(*spec.exponent));
  }
  if (!parts.empty()) {
    canonical += "(";
    for (std::size_t i = 0; i < parts.size(); ++i) canonical += (i ? "," : "") + parts[i];
    canonical += ")";
  }
  spec.text = canonical;
  return spec;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line) + ": expected 'key = value', got '" + body + "'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!known_keys().count(key)) {
      throw ConfigError(source + ":" + std::to_string(line) + ": unknown field '" + key + "'");
    }
    if (entries.count(key)) {
      throw ConfigError(source + ":" + std::to_string(line) + ": field '" + key + "' given twice (first on line " +
                        std::to_string(entries[key].line) + ")");
    }
    if (value.empty()) throw ConfigError(source + ":" + std::to_string(line) + ": field '" + key + "' has no value");
    entries[key] = Entry{value, line};
  }

  const Fields f(std::move(entries), source);
  RunConfig c;
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  const auto nonnegative = [](double v) { return v >= 0.0 && std::isfinite(v); };

  f.get("name", c.label);
  f.get("family", c.family.name);
  if (std::find(family_names().begin(), family_names().end(), c.family.name) == family_names().end()) {
    std::string list;
    for (const auto& n : family_names()) list += (list.empty() ? "" : ", ") + n;
    f.fail("family", "unknown family '" + c.family.name + "' (" + list + ")");
  }
  f.get("family.p", c.family.p, positive, "p > 0");
  f.get("family.q", c.family.q, positive, "q > 0");
  f.get("family.p_min", c.family.p_min, positive, "p_min > 0");
  f.get("family.p_max", c.family.p_max, positive, "p_max > 0");
  f.get("family.weight", c.family.weight);
  try {
    (void)gallery::parse_weight(c.family.weight);
  } catch (const UsageError& e) {
    f.fail("family.weight", e.what());
  }
  f.get("family.w_max", c.family.w_max, nonnegative, "w_max >= 0");
  f.get("family.threshold", c.family.threshold, positive, "threshold > 0");

  f.get("domain", c.domain.shape);
  if (!c.domain.shape.empty()) {
    static const std::set<std::string> shapes = {"unit_ball", "punctured_unit_ball", "ball", "box", "whole_space"};
    if (!shapes.count(c.domain.shape)) {
      f.fail("domain", "unknown shape '" + c.domain.shape + "' (unit_ball, punctured_unit_ball, ball, box, whole_space)");
    }
  }
  f.get_int("domain.dimension", c.domain.dimension, 1, 3);
  f.get_list("domain.center", c.domain.center);
  f.get("domain.radius", c.domain.radius, positive, "radius > 0");
  f.get_list("domain.lo", c.domain.lo);
  f.get_list("domain.hi", c.domain.hi);
  f.get_points("domain.excluded", c.domain.excluded);

  f.get_int("plan.depth", c.plan.refinement_depth, 0, 60);
  f.get("plan.t_min", c.plan.t_grid.min, positive, "t_min > 0");
  f.get("plan.t_max", c.plan.t_grid.max, positive, "t_max > 0");
  f.get_int("plan.t_points", c.plan.t_grid.points, 2, 100000);
  f.get("plan.tau_min", c.plan.tau_grid.min, positive, "tau_min > 0");
  f.get("plan.tau_max", c.plan.tau_grid.max, positive, "tau_max > 0");
  f.get_int("plan.tau_points", c.plan.tau_grid.points, 2, 100000);
  f.get_int("plan.lattice", c.plan.lattice_half_count, 0, 1000);
  f.get_int("plan.ball_levels", c.plan.ball_levels, 0, 40);
  f.get("plan.extent", c.plan.unbounded_extent, positive, "extent > 0");
  if (!(c.plan.t_grid.min < c.plan.t_grid.max)) f.fail("plan.t_max", "need t_min < t_max");
  if (!(c.plan.tau_grid.min < c.plan.tau_grid.max)) f.fail("plan.tau_max", "need tau_min < tau_max");

  if (f.has("witness.mode")) {
    try {
      c.witness_mode = parse_mode(f.text("witness.mode"));
    } catch (const ConfigError& e) {
      f.fail("witness.mode", e.what());
    }
  }
  f.get("witness.beta", c.witness_beta, [](double v) { return v > 0.0 && v <= 1.0; }, "0 < beta <= 1");
  f.get("witness.h", c.witness_h);
  if (!valid_level(c.witness_h)) f.fail("witness.h", "expected a number >= 0, sigma or sigma/2");
  f.get("witness.sigma", c.sigma, positive, "sigma > 0");
  f.get("search.beta_floor", c.beta_floor, [](double v) { return v > 0.0 && v <= 1.0; }, "0 < beta_floor <= 1");
  f.get("search.h_cap", c.h_cap, nonnegative, "h_cap >= 0");
  f.get_int("search.max_depth", c.search_depth, 0, 200);
  f.get_int("search.max_tuples", c.search_max_tuples, 0, 1000000000000LL);

  if (f.has("conditions")) {
    for (const std::string& item : split_top(f.text("conditions"), ',')) {
      if (item.empty()) f.fail("conditions", "empty item");
      if (item == "all") {
        for (const char* n : {"A0", "A1", "A2new", "A2phi", "A2max", "A2old", "aIncP", "aDecQ"}) {
          c.conditions.push_back(parse_condition_spec(n, c));
        }
        continue;
      }
      try {
        c.conditions.push_back(parse_condition_spec(item, c));
      } catch (const ConfigError& e) {
        f.fail("conditions", e.what());
      }
    }
  }
  if (f.has("expect")) {
    try {
      set_expect(c, f.text("expect"));
    } catch (const ConfigError& e) {
      f.fail("expect", e.what());
    }
  }

  f.get("function", c.function.kind);
  if (c.function.kind != "bump" && c.function.kind != "zero" && c.function.kind != "csv") {
    f.fail("function", "expected bump, zero or csv");
  }
  f.get_list("function.center", c.function.center);
  f.get("function.radius", c.function.radius, positive, "radius > 0");
  f.get("function.amplitude", c.function.amplitude, [](double v) { return std::isfinite(v); }, "finite");
  f.get("function.path", c.function.path);
  if (c.function.kind == "csv" && c.function.path.empty()) f.fail("function", "csv needs function.path");
  f.get_int("grid.n", c.grid_n, 8, 1 << 20);
  f.get_list("grid.lo", c.grid_lo);
  f.get_list("grid.hi", c.grid_hi);
  f.get_list("density.eps", c.eps);
  for (double e : c.eps) {
    if (!(e > 0.0 && e < 1.0)) f.fail("density.eps", "every epsilon must lie in (0,1)");
  }
  f.get("density.threshold_fraction", c.threshold_fraction, positive, "threshold_fraction > 0");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse_config(in, path);
}

void set_plan_depth(RunConfig& config, int depth) {
  if (depth < 0 || depth > 60) throw ConfigError("--plan-depth must lie in [0, 60]");
  config.plan.refinement_depth = depth;
}

void set_expect(RunConfig& config, const std::string& list) {
  std::vector<std::string> out;
  for (const std::string& item : split_top(list, ',')) {
    if (item == "holds" || item == "holds_on_samples") {
      out.emplace_back("holds");
    } else if (item == "violated") {
      out.emplace_back("violated");
    } else {
      throw ConfigError("expect entries must be 'holds' or 'violated', got '" + item + "'");
    }
  }
  config.expect = std::move(out);
}

SpatialDomain build_domain(const RunConfig& config) {
  const DomainSpec& d = config.domain;
  std::vector<Point> excluded;
  for (const auto& e : d.excluded) excluded.emplace_back(e);
  const std::string shape = !d.shape.empty()                       ? d.shape
                            : config.family.name == "example_1_1" ? "punctured_unit_ball"
                                                                  : "unit_ball";
  const auto sized = [&](const std::vector<double>& v, const char* field) {
    if (v.size() != d.dimension) {
      throw ConfigError(std::string("field '") + field + "': expected " + std::to_string(d.dimension) + " coordinates");
    }
    return Point(v);
  };
  for (const auto& e : d.excluded) {
    if (e.size() != d.dimension) throw ConfigError("field 'domain.excluded': points must match domain.dimension");
  }
  if (shape == "unit_ball") {
    const SpatialDomain b = gallery::unit_ball(d.dimension);
    return excluded.empty() ? b : SpatialDomain::ball(b.center(), 1.0, excluded);
  }
  if (shape == "punctured_unit_ball") {
    const Point origin(std::vector<double>(d.dimension, 0.0));
    if (std::find(excluded.begin(), excluded.end(), origin) == excluded.end()) excluded.insert(excluded.begin(), origin);
    return SpatialDomain::ball(origin, 1.0, excluded);
  }
  if (shape == "ball") {
    const Point c = d.center.empty() ? Point(std::vector<double>(d.dimension, 0.0)) : sized(d.center, "domain.center");
    return SpatialDomain::ball(c, d.radius, excluded);
  }
  if (shape == "box") {
    return SpatialDomain::box(sized(d.lo, "domain.lo"), sized(d.hi, "domain.hi"), excluded);
  }
  return SpatialDomain::whole_space(d.dimension, excluded);
}

PhiFamily build_family(const RunConfig& config, const SpatialDomain& domain) {
  const FamilySpec& f = config.family;
  if (f.name == "orlicz_power") return gallery::orlicz_power(f.p, domain);
  if (f.name == "variable_exponent") return gallery::variable_exponent(f.p_min, f.p_max, domain);
  if (f.name == "double_phase") {
    return gallery::double_phase(f.p, f.q, gallery::parse_weight(f.weight), f.w_max, domain);
  }
  if (f.name == "example_1_1") return gallery::punctured_example(domain);
  if (f.name == "step") return gallery::step(f.threshold, domain);
  throw ConfigError("unknown family '" + f.name + "'");
}

SearchOptions build_search_options(const RunConfig& config) {
  SearchOptions s;
  s.max_depth = config.search_depth;
  s.max_tuples = config.search_max_tuples;
  return s;
}

Witness build_witness(const ConditionSpec& spec, const RunConfig& config, const SpatialDomain& domain) {
  Witness w;
  w.sigma = spec.sigma.value_or(config.sigma);
  w.beta = spec.beta;
  const double level = resolve_level(spec.h, w.sigma);
  w.h = domain.bounded() ? WeightFunction::indicator(level, domain)
                         : WeightFunction::envelope(level, domain.dimension());
  return w;
}

SampledFunction build_function(const RunConfig& config) {
  const FunctionSpec& fn = config.function;
  if (fn.kind == "csv") {
    std::ifstream in(fn.path);
    if (!in) throw ConfigError("field 'function.path': cannot open '" + fn.path + "'");
    return SampledFunction::read_csv(in);
  }
  const std::size_t n = fn.center.empty() ? (config.grid_lo.empty() ? 1 : config.grid_lo.size()) : fn.center.size();
  if (n < 1 || n > 3) throw ConfigError("density runs support dimensions 1 to 3");
  const std::vector<double> center = fn.center.empty() ? std::vector<double>(n, 0.0) : fn.center;
  std::vector<double> lo = config.grid_lo, hi = config.grid_hi;
  if (lo.empty()) {
    for (double c : center) lo.push_back(c - fn.radius - 1.0);
  }
  if (hi.empty()) {
    for (double c : center) hi.push_back(c + fn.radius + 1.0);
  }
  if (lo.size() != n || hi.size() != n) throw ConfigError("fields 'grid.lo'/'grid.hi' must match the function dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lo[i] < hi[i])) throw ConfigError("field 'grid.hi': need grid.lo < grid.hi on every axis");
  }
  const UniformGrid grid(Point(lo), Point(hi), config.grid_n);
  if (fn.kind == "zero") return SampledFunction::zero(grid);
  const Point c(center);
  const double r = fn.radius;
  const double a = fn.amplitude;
  return SampledFunction::sample(grid, [c, r, a](const Point& x) {
    const double s = x.distance(c) / r;
    return s < 1.0 ? a * std::exp(-1.0 / (1.0 - s * s)) : 0.0;
  });
}

SpatialDomain build_density_domain(const RunConfig& config, const UniformGrid& grid) {
  if (!config.domain.shape.empty()) {
    RunConfig copy = config;
    copy.domain.dimension = grid.dimension();
    return build_domain(copy);
  }
  std::vector<Point> excluded;
  if (config.family.name == "example_1_1") {
    const Point origin(std::vector<double>(grid.dimension(), 0.0));
    const SpatialDomain box = grid.as_domain();
    if (box.contains(origin)) excluded.push_back(origin);
  }
  for (const auto& e : config.domain.excluded) excluded.emplace_back(e);
  return grid.as_domain(excluded);
}

}  // namespace orlicz::cli
