#include "orlicz/cli/report.hpp"

#include <cmath>

#include "orlicz/format.hpp"

namespace orlicz::cli {

namespace {

std::string arg_name(ConditionId id) {
  switch (id) {
    case ConditionId::A2phi:
    case ConditionId::aIncP:
    case ConditionId::aDecQ: return "t";
    default: return "tau";
  }
}

Json string_list(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

Json number_list(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json grid(const GridSpec& g) {
  Json j;
  j["min"] = number(g.min);
  j["max"] = number(g.max);
  j["points"] = g.points;
  return j;
}

std::string mode_name(WitnessMode m) { return m == WitnessMode::given ? "given" : "search"; }

}  // namespace

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json point(const Point& p) {
  Json a = Json::array();
  for (double c : p.coords()) a.push_back(number(c));
  return a;
}

Json resolved_config(const RunConfig& c) {
  Json j;
  j["name"] = c.label;
  Json fam;
  fam["name"] = c.family.name;
  fam["p"] = number(c.family.p);
  fam["q"] = number(c.family.q);
  fam["p_min"] = number(c.family.p_min);
  fam["p_max"] = number(c.family.p_max);
  fam["weight"] = c.family.weight;
  fam["w_max"] = number(c.family.w_max);
  fam["threshold"] = number(c.family.threshold);
  j["family"] = fam;
  Json dom;
  dom["shape"] = c.domain.shape.empty() ? "default" : c.domain.shape;
  dom["dimension"] = c.domain.dimension;
  dom["center"] = number_list(c.domain.center);
  dom["radius"] = number(c.domain.radius);
  dom["lo"] = number_list(c.domain.lo);
  dom["hi"] = number_list(c.domain.hi);
  Json ex = Json::array();
  for (const auto& e : c.domain.excluded) ex.push_back(number_list(e));
  dom["excluded"] = ex;
  j["domain"] = dom;
  Json plan;
  plan["depth"] = c.plan.refinement_depth;
  plan["t_grid"] = grid(c.plan.t_grid);
  plan["tau_grid"] = grid(c.plan.tau_grid);
  plan["lattice"] = c.plan.lattice_half_count;
  plan["ball_levels"] = c.plan.ball_levels;
  plan["extent"] = number(c.plan.unbounded_extent);
  j["plan"] = plan;
  Json conds = Json::array();
  for (const auto& s : c.conditions) conds.push_back(s.text);
  j["conditions"] = conds;
  j["expect"] = string_list(c.expect);
  Json wit;
  wit["mode"] = mode_name(c.witness_mode);
  wit["beta"] = number(c.witness_beta);
  wit["h"] = c.witness_h;
  wit["sigma"] = number(c.sigma);
  j["witness"] = wit;
  Json search;
  search["beta_floor"] = number(c.beta_floor);
  search["h_cap"] = number(c.h_cap);
  search["max_depth"] = c.search_depth;
  search["max_tuples"] = c.search_max_tuples;
  j["search"] = search;
  Json fn;
  fn["kind"] = c.function.kind;
  fn["center"] = number_list(c.function.center);
  fn["radius"] = number(c.function.radius);
  fn["amplitude"] = number(c.function.amplitude);
  fn["path"] = c.function.path;
  j["function"] = fn;
  Json g;
  g["n"] = c.grid_n;
  g["lo"] = number_list(c.grid_lo);
  g["hi"] = number_list(c.grid_hi);
  j["grid"] = g;
  Json dens;
  dens["eps"] = number_list(c.eps);
  dens["threshold_fraction"] = number(c.threshold_fraction);
  j["density"] = dens;
  return j;
}

Json to_json(const Violation& v, ConditionId id) {
  Json j;
  j["x"] = point(v.x);
  j["y"] = point(v.y);
  j["arg_name"] = arg_name(id);
  j["arg"] = number(v.arg);
  j["lhs"] = number(v.lhs);
  j["rhs"] = number(v.rhs);
  j["depth"] = v.depth;
  return j;
}

Json to_json(const Witness& w) {
  Json j;
  j["beta"] = number(w.beta);
  j["h"] = w.h.describe();
  j["h_sup"] = number(w.h.sup_bound());
  j["h_l1"] = number(w.h.l1_bound());
  j["sigma"] = number(w.sigma);
  return j;
}

Json to_json(const ConditionReport& r, double sigma) {
  Json j;
  j["condition_id"] = to_string(r.id);
  j["verdict"] = to_string(r.verdict);
  j["beta"] = number(r.best_beta);
  j["h_form"] = r.witness ? r.witness->h.describe() : "none";
  j["sigma"] = number(r.witness ? r.witness->sigma : sigma);
  j["worst_tuple"] = r.violation ? to_json(*r.violation, r.id) : Json();
  j["residual"] = r.violation ? number(r.violation->residual) : Json();
  j["mode"] = r.mode;
  j["vacuous"] = r.vacuous;
  j["witness"] = r.witness ? to_json(*r.witness) : Json();
  j["tuples_checked"] = r.tuples_checked;
  if (r.inverse_at_one_min || r.inverse_at_one_max) {
    Json io;
    io["min"] = number(r.inverse_at_one_min.value_or(NAN));
    io["max"] = number(r.inverse_at_one_max.value_or(NAN));
    j["inverse_at_one"] = io;
  }
  Json profile = Json::array();
  for (const DepthSample& d : r.depth_profile) profile.push_back(Json::array({d.depth, number(d.value)}));
  j["depth_profile"] = profile;
  j["warnings"] = string_list(r.warnings);
  j["plan"] = r.plan_summary;
  return j;
}

Json to_json(const EdgeResult& e) {
  Json j;
  j["from"] = e.from;
  j["to"] = e.to;
  j["tested"] = e.tested;
  j["source_holds"] = e.source_holds;
  j["target_holds"] = e.target_holds;
  j["consistent"] = e.consistent;
  j["note"] = e.note;
  j["witness"] = e.witness ? to_json(*e.witness) : Json();
  j["offending"] = e.offending ? to_json(*e.offending, ConditionId::A2new) : Json();
  return j;
}

Json to_json(const SuiteResult& s, double sigma) {
  Json j;
  j["mode"] = s.mode;
  j["consistent"] = s.consistent();
  j["inconsistencies"] = s.inconsistencies;
  j["A0"] = to_json(s.a0, sigma);
  j["A1"] = s.a1 ? to_json(*s.a1, sigma) : Json();
  Json forms = Json::array();
  for (const FormulationResult& f : s.formulations) {
    Json fj;
    fj["formulation"] = static_cast<int>(f.formulation);
    fj["name"] = to_string(f.formulation);
    fj["holds"] = f.holds;
    fj["required_a0_beta"] = f.required_a0_beta ? number(*f.required_a0_beta) : Json();
    fj["report"] = to_json(f.report, sigma);
    forms.push_back(fj);
  }
  j["formulations"] = forms;
  Json edges = Json::array();
  for (const EdgeResult& e : s.edges) edges.push_back(to_json(e));
  j["edges"] = edges;
  Json extras = Json::array();
  for (const ConditionReport& r : s.extras) extras.push_back(to_json(r, sigma));
  j["extras"] = extras;
  return j;
}

Json to_json(const DensityResult& d, const std::vector<double>& eps) {
  Json j;
  j["passed"] = d.passed();
  j["precondition_ok"] = d.precondition_ok;
  j["f_norm"] = number(d.f_norm);
  j["threshold"] = number(d.threshold);
  j["strictly_decreasing"] = d.strictly_decreasing;
  j["decreasing_after_first"] = d.decreasing_after_first;
  j["final_below_threshold"] = d.final_below_threshold;
  j["envelope_lo"] = point(d.envelope_lo);
  j["envelope_hi"] = point(d.envelope_hi);
  j["eps"] = number_list(eps);
  Json rows = Json::array();
  for (const DensityRow& r : d.rows) {
    Json rj;
    rj["epsilon"] = number(r.epsilon);
    rj["norm"] = number(r.norm);
    rj["gradient_norm"] = number(r.gradient_norm);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  j["A1"] = to_json(d.a1, 1.0);
  return j;
}

std::string certificate_csv_header() { return "condition,x,y,arg_name,arg,lhs,rhs,residual,depth"; }

std::string certificate_csv_row(const std::string& label, const ConditionReport& r) {
  const Violation& v = *r.violation;
  const auto coords = [](const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.dimension(); ++i) s += (i ? " " : "") + format_number(p[i]);
    return s;
  };
  const std::string quoted = label.find(',') == std::string::npos ? label : "\"" + label + "\"";
  return quoted + "," + coords(v.x) + "," + coords(v.y) + "," + arg_name(r.id) + "," + format_number(v.arg) + "," +
         format_number(v.lhs) + "," + format_number(v.rhs) + "," + format_number(v.residual) + "," +
         std::to_string(v.depth);
}

}  // namespace orlicz::cli
