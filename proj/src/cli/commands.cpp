#include "orlicz/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "orlicz/cli/report.hpp"
#include "orlicz/format.hpp"
#include "orlicz/gallery.hpp"

namespace orlicz::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kTool = "orlicz " ORLICZ_VERSION;

class Output {
 public:
  explicit Output(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw UsageError("cannot create output directory '" + dir_ + "': " + ec.message());
    }
  }

  void write(const std::string& name, const std::string& text) const {
    if (dir_.empty()) return;
    const fs::path path = fs::path(dir_) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    out << text;
  }

  void write_json(const std::string& name, const Json& j) const { write(name, j.dump(2) + "\n"); }

 private:
  std::string dir_;
};

Json envelope(const std::string& command, const RunConfig& config) {
  Json j;
  j["tool"] = kTool;
  j["command"] = command;
  j["config"] = resolved_config(config);
  return j;
}

ConditionReport run_condition(const ConditionSpec& spec, const RunConfig& config, const PhiFamily& family,
                              const SamplePlan& plan) {
  const ConditionOptions options;
  switch (spec.id) {
    case ConditionId::A0: return check_A0(family, plan, options);
    case ConditionId::A1: return check_A1(family, plan, options);
    case ConditionId::aIncP: {
      const double p = spec.exponent.value_or(family.traits().ainc_p ? family.traits().ainc_p->exponent : 1.0);
      return check_growth(spec.id, family, p, plan);
    }
    case ConditionId::aDecQ: {
      if (!spec.exponent && !family.traits().adec_q) {
        throw ConfigError("condition aDecQ: family " + family.name() + " declares no q; give aDecQ(q=...)");
      }
      const double q = spec.exponent.value_or(family.traits().adec_q ? family.traits().adec_q->exponent : 1.0);
      return check_growth(spec.id, family, q, plan);
    }
    default: break;
  }
  const double sigma = spec.sigma.value_or(config.sigma);
  if (spec.mode == WitnessMode::search) {
    return search_A2(spec.id, family, config.beta_floor, config.h_cap, sigma, plan, build_search_options(config));
  }
  const Witness w = build_witness(spec, config, family.domain());
  w.validate(&plan);
  return check_A2(spec.id, family, w, plan, options);
}

std::string verdict_text(const ConditionReport& r) {
  std::string s = to_string(r.verdict);
  if (r.vacuous) s += " (vacuous)";
  return s;
}

std::string expected_of(const std::string& e) { return e == "holds" ? "holds_on_samples" : e; }

}  // namespace

int run_check(const RunConfig& config, const std::string& out_dir, std::ostream& log) {
  if (config.conditions.empty()) throw ConfigError("field 'conditions': nothing to check");
  if (!config.expect.empty() && config.expect.size() != config.conditions.size()) {
    throw ConfigError("field 'expect': " + std::to_string(config.expect.size()) + " entries for " +
                      std::to_string(config.conditions.size()) + " conditions");
  }
  const SpatialDomain domain = build_domain(config);
  const PhiFamily family = build_family(config, domain);
  const SamplePlan plan = make_plan(domain, config.plan);
  const Output out(out_dir);

  Json all = envelope("check", config);
  all["family"] = family.name();
  all["domain"] = domain.describe();
  all["plan"] = plan.summary();
  Json items = Json::array();
  std::ostringstream summary;
  std::ostringstream certificates;
  bool any_certificate = false;
  bool all_match = true;
  summary << "family: " << family.name() << "\n"
          << "domain: " << domain.describe() << "\n"
          << "plan:   " << plan.summary() << "\n";

  for (std::size_t i = 0; i < config.conditions.size(); ++i) {
    const ConditionSpec& spec = config.conditions[i];
    const ConditionReport r = run_condition(spec, config, family, plan);
    const std::string expected = config.expect.empty() ? "holds_on_samples" : expected_of(config.expect[i]);
    const bool match = to_string(r.verdict) == expected;
    all_match = all_match && match;

    Json item;
    item["condition"] = spec.text;
    item["expected"] = expected;
    item["match"] = match;
    item["report"] = to_json(r, spec.sigma.value_or(config.sigma));
    items.push_back(item);

    Json single = envelope("check", config);
    single["family"] = family.name();
    single["condition"] = spec.text;
    single["expected"] = expected;
    single["match"] = match;
    single["report"] = item["report"];
    std::ostringstream name;
    name << std::setw(2) << std::setfill('0') << i + 1 << "_" << to_string(spec.id) << ".json";
    out.write_json(name.str(), single);

    if (r.violation) {
      if (!any_certificate) certificates << certificate_csv_header() << "\n";
      any_certificate = true;
      certificates << certificate_csv_row(spec.text, r) << "\n";
    }
    summary << std::left << std::setw(28) << spec.text << " " << std::setw(28) << verdict_text(r)
            << " beta=" << std::setw(12) << format_number(r.best_beta) << " expected=" << expected
            << (match ? "  ok" : "  MISMATCH") << "\n";
    for (const std::string& w : r.warnings) summary << "    note: " << w << "\n";
    if (r.violation) {
      const Violation& v = *r.violation;
      summary << "    certificate: x=" << to_string(v.x) << " y=" << to_string(v.y) << " arg=" << format_number(v.arg)
              << " lhs=" << format_number(v.lhs) << " rhs=" << format_number(v.rhs) << "\n";
    }
  }
  all["conditions"] = items;
  all["all_match"] = all_match;
  summary << (all_match ? "result: all verdicts match\n" : "result: verdict mismatch\n");

  out.write_json("report.json", all);
  out.write("summary.txt", summary.str());
  if (any_certificate) out.write("certificates.csv", certificates.str());
  log << summary.str();
  return all_match ? ExitCode::pass : ExitCode::mismatch;
}

int run_suite(const RunConfig& config, const std::string& out_dir, std::ostream& log) {
  if (!config.expect.empty() && config.expect.size() != 5) {
    throw ConfigError("field 'expect': the suite takes five verdicts, one per formulation");
  }
  const SpatialDomain domain = build_domain(config);
  const PhiFamily family = build_family(config, domain);
  const SamplePlan plan = make_plan(domain, config.plan);
  const Output out(out_dir);

  SuiteOptions options;
  options.sigma = config.sigma;
  options.beta_floor = config.beta_floor;
  options.h_sup_cap = config.h_cap;
  options.search = build_search_options(config);
  const SuiteResult s = implication_suite(family, plan, options);

  bool match = true;
  for (std::size_t i = 0; i < config.expect.size() && i < s.formulations.size(); ++i) {
    match = match && to_string(s.formulations[i].report.verdict) == expected_of(config.expect[i]);
  }

  Json j = envelope("suite", config);
  j["family"] = family.name();
  j["domain"] = domain.describe();
  j["plan"] = plan.summary();
  j["expect_match"] = match;
  j["suite"] = to_json(s, config.sigma);
  out.write_json("suite.json", j);

  std::ostringstream edges;
  edges << "from,to,tested,source_holds,target_holds,consistent,note\n";
  for (const EdgeResult& e : s.edges) {
    edges << e.from << "," << e.to << "," << e.tested << "," << e.source_holds << "," << e.target_holds << ","
          << e.consistent << ",\"" << e.note << "\"\n";
  }
  out.write("edges.csv", edges.str());

  std::ostringstream summary;
  summary << "family: " << family.name() << "\n"
          << "domain: " << domain.describe() << "\n"
          << "plan:   " << plan.summary() << "\n"
          << "mode:   " << s.mode << "\n"
          << "A0:     " << verdict_text(s.a0) << " beta=" << format_number(s.a0.best_beta) << "\n";
  if (s.a1) summary << "A1:     " << verdict_text(*s.a1) << " beta=" << format_number(s.a1->best_beta) << "\n";
  for (const FormulationResult& f : s.formulations) {
    summary << "(" << static_cast<int>(f.formulation) << ") " << std::left << std::setw(14) << to_string(f.formulation)
            << " " << std::setw(28) << verdict_text(f.report) << " beta=" << format_number(f.report.best_beta);
    if (f.report.witness) summary << " h=" << f.report.witness->h.describe();
    summary << "\n";
  }
  summary << "edges:\n";
  for (const EdgeResult& e : s.edges) {
    summary << "  " << std::left << std::setw(24) << (e.from + " -> " + e.to) << " "
            << (e.tested ? (e.consistent ? "consistent" : "INCONSISTENT") : "not tested") << "  " << e.note << "\n";
  }
  summary << "inconsistencies: " << s.inconsistencies << "\n";
  if (!config.expect.empty()) summary << (match ? "expected verdicts: match\n" : "expected verdicts: MISMATCH\n");
  out.write("summary.txt", summary.str());
  log << summary.str();
  return s.consistent() && match ? ExitCode::pass : ExitCode::mismatch;
}

int run_density(const RunConfig& config, const std::string& out_dir, std::ostream& log) {
  if (!config.expect.empty()) throw ConfigError("field 'expect': not used by density");
  if (config.eps.empty()) throw ConfigError("field 'density.eps': empty sequence");
  const SampledFunction f = build_function(config);
  const SpatialDomain domain = build_density_domain(config, f.grid());
  const PhiFamily family = build_family(config, domain);
  const Output out(out_dir);

  DensityOptions options;
  options.threshold_fraction = config.threshold_fraction;
  options.a1_plan = config.plan;
  const DensityResult d = density_experiment(family, f, config.eps, options);

  Json j = envelope("density", config);
  j["family"] = family.name();
  j["domain"] = domain.describe();
  j["result"] = to_json(d, config.eps);
  out.write_json("density.json", j);

  std::ostringstream summary;
  summary << "family: " << family.name() << "\n"
          << "grid:   " << f.grid().size() << " nodes on " << to_string(f.grid().lo()) << " .. "
          << to_string(f.grid().hi()) << "\n"
          << "A1 on dilated support: " << verdict_text(d.a1) << " beta=" << format_number(d.a1.best_beta) << "\n";
  if (!d.precondition_ok) {
    std::ostringstream cert;
    cert << certificate_csv_header() << "\n";
    if (d.a1.violation) cert << certificate_csv_row("A1", d.a1) << "\n";
    out.write("a1_certificate.csv", cert.str());
    if (d.a1.violation) {
      const Violation& v = *d.a1.violation;
      summary << "    certificate: x=" << to_string(v.x) << " y=" << to_string(v.y) << " tau=" << format_number(v.arg)
              << " lhs=" << format_number(v.lhs) << " rhs=" << format_number(v.rhs) << "\n";
    }
    summary << "result: (A1) precondition failed\n";
    out.write("summary.txt", summary.str());
    log << summary.str();
    return ExitCode::mismatch;
  }

  std::ostringstream table;
  table << "epsilon,norm,gradient_norm\n";
  for (const DensityRow& r : d.rows) {
    table << format_number(r.epsilon) << "," << format_number(r.norm) << "," << format_number(r.gradient_norm) << "\n";
  }
  out.write("density.csv", table.str());
  summary << "||f|| = " << format_number(d.f_norm) << ", threshold = " << format_number(d.threshold) << "\n";
  summary << table.str();
  summary << "strictly decreasing: " << (d.strictly_decreasing ? "yes" : "no") << "\n"
          << "final below threshold: " << (d.final_below_threshold ? "yes" : "no") << "\n"
          << (d.passed() ? "result: pass\n" : "result: fail\n");
  out.write("summary.txt", summary.str());
  log << summary.str();
  return d.passed() ? ExitCode::pass : ExitCode::mismatch;
}

int gallery_list(std::ostream& out) {
  for (const gallery::Entry& e : gallery::entries()) {
    out << std::left << std::setw(20) << e.name << std::setw(44) << e.formula << e.parameters << "\n";
  }
  return ExitCode::pass;
}

}  // namespace orlicz::cli
