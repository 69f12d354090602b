// Acceptance checks. Prints one PASS/FAIL line per criterion; exit 1 on any FAIL.
// Usage: orlicz_acceptance [scratch_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/cli/commands.hpp"
#include "orlicz/cli/config.hpp"
#include "orlicz/conditions.hpp"
#include "orlicz/conjugation.hpp"
#include "orlicz/gallery.hpp"
#include "orlicz/inversion.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/phi_core.hpp"

using namespace orlicz;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failure notes for one criterion.
struct Tally {
  std::vector<std::string> notes;
  std::string info;
  void require(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
  }
  [[nodiscard]] bool ok() const { return notes.empty(); }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Named {
  std::string label;
  PhiFamily phi;
};

std::vector<Named> gallery_families() {
  const auto ball = gallery::unit_ball(2);
  const auto punctured = gallery::punctured_unit_ball(2);
  return {
      {"orlicz_power(p=2)", gallery::orlicz_power(2, ball)},
      {"variable_exponent[2,4]", gallery::variable_exponent(2, 4, ball)},
      {"double_phase(2,4)", gallery::double_phase(2, 4, gallery::Weight::linear, 1.0, ball)},
      {"step(1)", gallery::step(1.0, ball)},
      {"example_1_1", gallery::punctured_example(punctured)},
  };
}

std::vector<Named> suite_families() {
  const auto ball = gallery::unit_ball(2);
  return {
      {"orlicz_power(p=2)", gallery::orlicz_power(2, ball)},
      {"variable_exponent[2,4]", gallery::variable_exponent(2, 4, ball)},
      {"double_phase(2,4)", gallery::double_phase(2, 4, gallery::Weight::linear, 1.0, ball)},
  };
}

Witness indicator_witness(double beta, double level, const SpatialDomain& domain, double sigma) {
  Witness w;
  w.beta = beta;
  w.h = WeightFunction::indicator(level, domain);
  w.sigma = sigma;
  return w;
}

// 1. The punctured example.
Tally counterexample() {
  Tally t;
  const auto start = Clock::now();
  const auto domain = gallery::punctured_unit_ball(2);
  const auto phi = gallery::punctured_example(domain);
  const auto plan = make_plan(domain);
  const double sigma = 1.0, beta_floor = 1e-3, cap = 10.0;

  const auto old_form = check_A2_old(phi, indicator_witness(1.0, sigma, domain, sigma), plan);
  t.require(old_form.holds() && old_form.vacuous, "A2old(h=sigma) is not vacuous holds_on_samples");

  const auto s = counterexample_search(phi, ConditionId::A2phi, beta_floor, cap, sigma, plan);
  t.require(s.found && s.certificate.has_value(), "no A2phi certificate");
  if (s.certificate) {
    const auto& c = *s.certificate;
    const double bound = beta_floor * beta_floor * c.arg * c.arg / (c.arg * c.arg / c.y.norm() + 2 * cap);
    t.require(c.x.norm() < bound, "|x| = " + num(c.x.norm()) + " not below " + num(bound));
    t.require(c.lhs > c.rhs, "certificate does not violate the inequality");
    t.info = "|x|=" + num(c.x.norm()) + " bound=" + num(bound);
  }
  const double secs = seconds_since(start);
  t.require(secs < 10.0, "runtime " + num(secs) + " s");
  t.info += " " + num(secs) + " s";
  return t;
}

// 2. Equivalence web.
Tally equivalence_web() {
  Tally t;
  const auto start = Clock::now();
  std::size_t fewest = SIZE_MAX;
  for (const auto& [label, phi] : suite_families()) {
    const auto plan = make_plan(phi.domain());
    const auto r = implication_suite(phi, plan);
    t.require(r.consistent(), label + ": " + std::to_string(r.inconsistencies) + " inconsistencies");
    for (const auto& f : r.formulations) {
      fewest = std::min(fewest, f.report.tuples_checked);
      t.require(f.report.tuples_checked >= 10000,
                label + " " + to_string(f.formulation) + ": " + std::to_string(f.report.tuples_checked) + " tuples");
    }
  }
  const double secs = seconds_since(start);
  t.require(secs < 60.0, "runtime " + num(secs) + " s");
  t.info = "min tuples " + std::to_string(fewest) + ", " + num(secs) + " s";
  return t;
}

// 3. A2old with ‖h‖∞ <= σ/2 gives A0 with at least the transformed constant.
Tally old_form_gives_A0() {
  Tally t;
  const double sigma = 1.0;
  int passing = 0;
  for (const auto& [label, phi] : gallery_families()) {
    const auto plan = make_plan(phi.domain());
    // Search mode: β_floor = 1e-3, ‖h‖∞ capped at σ/2.
    const auto old_form = search_A2(ConditionId::A2old, phi, 1e-3, sigma / 2, sigma, plan);
    if (!old_form.holds() || !old_form.witness) continue;
    const Witness& w = *old_form.witness;
    t.require(w.h.sup_bound() <= sigma / 2, label + ": witness exceeds sigma/2");
    ++passing;
    const auto a0 = check_A0(phi, plan);
    t.require(a0.holds(), label + ": A2old holds but A0 fails");
    if (!a0.holds()) continue;
    TransformContext ctx;
    ctx.a = phi.ainc_constant();
    ctx.inverse_at_one_min = a0.inverse_at_one_min;
    ctx.inverse_at_one_max = a0.inverse_at_one_max;
    const Witness target = transform_witness(Formulation::old_half, Formulation::A0, w, ctx);
    t.require(a0.best_beta >= target.beta * (1 - 1e-9),
              label + ": A0 beta " + num(a0.best_beta) + " < transformed " + num(target.beta));
  }
  t.require(passing > 0, "no family passed A2old");
  t.info = std::to_string(passing) + " families passed A2old";
  return t;
}

// 4. The bounded-domain witness.
Tally bounded_witness() {
  Tally t;
  int certified = 0;
  for (const auto& [label, phi] : gallery_families()) {
    const auto plan = make_plan(phi.domain());
    const auto a0 = check_A0(phi, plan);
    if (!a0.holds()) continue;
    ++certified;
    for (double sigma : {0.5, 1.0, 4.0}) {
      const Witness w = construct_bounded_witness(phi, sigma, plan);
      const double expected = a0.best_beta * a0.best_beta / std::max(1.0, phi.ainc_constant() * sigma);
      t.require(w.beta == expected, label + " sigma=" + num(sigma) + ": beta " + num(w.beta) + " != " + num(expected));
      t.require(check_A2_new(phi, w, plan).holds(), label + " sigma=" + num(sigma) + ": A2new fails");
    }
  }
  t.require(certified > 0, "no family certified A0");
  t.info = std::to_string(certified) + " A0-certified families";
  return t;
}

// 5. A1 implies A0 and A2 on bounded domains.
Tally a1_implies() {
  Tally t;
  const auto phi = gallery::variable_exponent(2, 4, gallery::unit_ball(2));
  const auto plan = make_plan(phi.domain());
  const auto a1 = check_A1(phi, plan);
  t.require(a1.holds(), "A1 fails for the variable exponent");
  if (a1.holds()) {
    t.require(check_A0(phi, plan).holds(), "A1 holds but A0 fails");
    const Witness w = construct_bounded_witness(phi, 1.0, plan);
    t.require(check_A2_new(phi, w, plan).holds(), "A1 holds but A2new fails");
  }
  const auto suite = implication_suite(phi, plan);
  for (const auto& e : suite.edges) {
    if (e.from != "A1") continue;
    t.require(e.tested && e.consistent, "suite edge A1 -> " + e.to + ": " + e.note);
  }
  t.info = "A1 beta=" + num(a1.best_beta);
  return t;
}

// 6. Conjugates.
Tally conjugates() {
  Tally t;
  const auto ball = gallery::unit_ball(2);
  const auto strong = suite_families();

  auto part = Clock::now();
  // Fenchel-Young on every sampled (x, s, t).
  PlanOptions fy;
  fy.t_grid = GridSpec{1e-4, 1e4, 81};
  fy.tau_grid = fy.t_grid;
  fy.refinement_depth = 4;
  const auto fy_plan = make_plan(ball, fy);
  ConjugateOptions light;
  light.s_grid = GridSpec{1e-6, 1e6, 161};
  const Conjugator star(light);
  std::size_t triples = 0;
  for (const auto& [label, phi] : gallery_families()) {
    const auto plan = label == "example_1_1" ? make_plan(phi.domain(), fy) : fy_plan;
    std::size_t bad = 0;
    for (const auto& sp : plan.x_points) {
      for (double tt : plan.t_grid) {
        const double c = star(phi, sp.x, tt);
        for (double s : plan.t_grid) {
          ++triples;
          if (!(s * tt <= phi(sp.x, s) + c + 1e-9 * (1 + s * tt))) ++bad;
        }
      }
    }
    t.require(bad == 0, label + ": " + std::to_string(bad) + " Fenchel-Young failures");
  }

  const double fy_secs = seconds_since(part);
  part = Clock::now();
  // Biconjugates of the strong families.
  PlanOptions tiny = fy;
  tiny.t_grid = GridSpec{1e-3, 1e3, 31};
  tiny.tau_grid = tiny.t_grid;
  tiny.refinement_depth = 1;
  tiny.lattice_half_count = 1;
  const auto bi_plan = make_plan(ball, tiny);
  double worst_bi = 0.0;
  for (const auto& [label, phi] : strong) {
    const auto bi = conjugate_family(conjugate_family(phi, light), light);
    EquivalenceOptions eo;
    eo.check_refinement = false;
    const auto r = check_equivalence(phi, bi, EquivalenceKind::valuewise, bi_plan, eo);
    worst_bi = std::max(worst_bi, r.certificate.constant);
    t.require(r.holds && r.certificate.constant <= 1.02, label + ": biconjugate c=" + num(r.certificate.constant));
  }

  const double bi_secs = seconds_since(part);
  part = Clock::now();
  // Inverse-product constant and its stability under one refinement.
  const auto ip_plan = make_plan(ball, [] {
    PlanOptions o;
    o.t_grid = GridSpec{1e-4, 1e4, 81};
    o.tau_grid = o.t_grid;
    o.refinement_depth = 4;
    o.lattice_half_count = 2;
    return o;
  }());
  for (const auto& [label, phi] : strong) {
    const auto r = inverse_product_check(phi, ip_plan, light);
    t.require(std::isfinite(r.constant) && r.stable,
              label + ": product c=" + num(r.constant) + " refined=" + num(r.refined_constant));
  }
  const auto square = inverse_product_check(gallery::orlicz_power(2, ball), ip_plan);
  t.require(std::abs(square.constant - 2.0) <= 1e-6, "t^2 product constant " + num(square.constant));
  t.info = std::to_string(triples) + " FY triples, max biconjugate c=" + num(worst_bi) +
           ", t^2 c=" + num(square.constant) + "; FY " + num(fy_secs) + " s, biconjugate " + num(bi_secs) +
           " s, product " + num(seconds_since(part)) + " s";
  return t;
}

// 7. left_inverse against a brute-force scan, and the inverse identities.
Tally inverse_oracle() {
  Tally t;
  std::vector<double> grid(10001);
  grid[0] = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    grid[i] = 1e-10 * std::pow(1e20, static_cast<double>(i - 1) / 9999.0);
  std::size_t compared = 0, overshoot = 0;
  double worst_identity = 0.0;
  for (const auto& [label, phi] : gallery_families()) {
    const auto plan = make_plan(phi.domain());
    std::size_t bad = 0;
    std::vector<double> table(grid.size());
    for (const auto& sp : plan.x_points) {
      for (std::size_t i = 0; i < grid.size(); ++i) table[i] = phi(sp.x, grid[i]);
      // The τ grid is increasing, so the scan pointer only moves forward.
      std::size_t k = 0;
      for (double tau : plan.tau_grid) {
        while (k < table.size() && table[k] < tau) ++k;
        const double v = left_inverse(phi, sp.x, tau);
        ++compared;
        if (k == table.size()) {
          if (!(v >= grid.back() - 1e-12)) ++bad;
        } else if (k == 0) {
          if (!(v <= grid[0] + 1e-12)) ++bad;
        } else {
          // Distance to the scan infimum within one cell; the inverse itself
          // is only resolved to rel_tol, so it may sit just past grid[k].
          const double cell = grid[k] - grid[k - 1];
          if (!(std::abs(v - grid[k]) <= cell + 1e-12)) ++bad;
          if (v > grid[k] + 1e-12) ++overshoot;
        }
      }
    }
    t.require(bad == 0, label + ": " + std::to_string(bad) + " scan disagreements");
    if (phi.strength() == Strength::strong) {
      const auto r = verify_inverse_identities(phi, plan);
      worst_identity = std::max({worst_identity, r.forward_residual, r.backward_residual});
      t.require(r.holds(1e-8), label + ": identity residuals " + num(r.forward_residual) + ", " +
                                   num(r.backward_residual));
    }
  }
  t.info = std::to_string(compared) + " comparisons, " + std::to_string(overshoot) +
           " past the scan node by more than 1e-12, identity residual " + num(worst_identity);
  return t;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes, weights;
  explicit GaussLegendre(int n) {
    for (int i = 1; i <= n; ++i) {
      double x = std::cos(M_PI * (i - 0.25) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes.push_back(x);
      weights.push_back(2.0 / ((1 - x * x) * dp * dp));
    }
  }
  /// Composite rule over `panels` equal panels of [a, b].
  double integrate(const std::function<double(double)>& f, double a, double b, int panels) const {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + 0.5 * h * nodes[i]);
    }
    return 0.5 * h * sum;
  }
};

double bump(double x) {
  const double s = std::abs(x) / 0.5;
  return s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
}

/// ‖f∗σ_ε - f‖_{L²} of the continuous bump by quadrature.
double l2_convolution_error(double eps, const GaussLegendre& gl) {
  const auto kernel = [eps](double z) {
    const double s = z / eps;
    return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
  };
  const double mass = gl.integrate(kernel, -eps, eps, 8);
  const auto smoothed = [&](double x) {
    return gl.integrate([&](double z) { return kernel(z) * bump(x - z); }, -eps, eps, 8) / mass;
  };
  const double reach = 0.5 + eps;
  const double sq = gl.integrate([&](double x) {
    const double d = smoothed(x) - bump(x);
    return d * d;
  }, -reach, reach, 400);
  return std::sqrt(sq);
}

// 8. Density experiment.
Tally density() {
  Tally t;
  const auto start = Clock::now();
  const UniformGrid grid(Point{-1.5}, Point{1.5}, 2048);
  const auto f = SampledFunction::sample(grid, [](const Point& x) { return bump(x[0]); });
  const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025, 0.0125};
  const auto domain = grid.as_domain();
  const GaussLegendre gl(20);
  double worst_oracle = 0.0;
  for (const auto& [label, phi] :
       std::vector<Named>{{"t^2", gallery::orlicz_power(2, domain)}, {"variable_exponent", gallery::variable_exponent(2, 4, domain)}}) {
    const auto r = density_experiment(phi, f, eps);
    t.require(r.precondition_ok, label + ": A1 precondition fails");
    t.require(r.strictly_decreasing, label + ": norm column not strictly decreasing");
    t.require(!r.rows.empty() && r.rows.back().norm < 0.1 * r.f_norm, label + ": final entry not below 0.1 ||f||");
    if (label == "t^2") {
      for (const auto& row : r.rows) {
        const double oracle = l2_convolution_error(row.epsilon, gl);
        const double rel = std::abs(row.norm - oracle) / oracle;
        worst_oracle = std::max(worst_oracle, rel);
        t.require(rel < 0.02, "eps=" + num(row.epsilon) + ": " + num(row.norm) + " vs oracle " + num(oracle));
      }
    }
  }
  const double secs = seconds_since(start);
  t.require(secs < 30.0, "runtime " + num(secs) + " s");
  t.info = "oracle deviation " + num(worst_oracle) + ", " + num(secs) + " s";
  return t;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Two suite runs write identical files.
Tally determinism(const fs::path& scratch) {
  Tally t;
  std::istringstream text(
      "family = double_phase\nfamily.p = 2\nfamily.q = 4\nfamily.weight = linear\nfamily.w_max = 1\n"
      "domain = unit_ball\ndomain.dimension = 2\n");
  const auto config = cli::parse_config(text, "acceptance");
  const fs::path a = scratch / "suite_a", b = scratch / "suite_b";
  fs::remove_all(a);
  fs::remove_all(b);
  std::ostringstream log;
  cli::run_suite(config, a.string(), log);
  cli::run_suite(config, b.string(), log);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    const auto name = entry.path().filename();
    t.require(fs::exists(b / name) && slurp(entry.path()) == slurp(b / name), name.string() + " differs");
  }
  t.require(files >= 3, "expected suite.json, edges.csv and summary.txt");
  t.info = std::to_string(files) + " files compared";
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "orlicz_acceptance";
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Tally()>>> criteria = {
      {"counterexample", counterexample},
      {"equivalence web", equivalence_web},
      {"A2old => A0", old_form_gives_A0},
      {"bounded witness", bounded_witness},
      {"A1 => A0 and A2", a1_implies},
      {"conjugates", conjugates},
      {"inverse oracle", inverse_oracle},
      {"density", density},
      {"determinism", [&] { return determinism(scratch); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Tally t;
    const auto start = Clock::now();
    try {
      t = criteria[i].second();
    } catch (const std::exception& e) {
      t.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (t.ok() ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first;
    if (!t.info.empty()) std::cout << " (" << t.info << ')';
    std::cout << " [" << num(seconds_since(start)) << " s]\n";
    for (const auto& n : t.notes) std::cout << "    " << n << '\n';
    std::cout.flush();
    if (!t.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
