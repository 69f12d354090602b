#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/conditions.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/phi_family.hpp"
#include "orlicz/sample_plan.hpp"

namespace orlicz::cli {

/// Malformed configuration; the message names the line and field.
class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

struct FamilySpec {
  std::string name = "orlicz_power";
  double p = 2.0;
  double q = 4.0;
  double p_min = 2.0;
  double p_max = 4.0;
  std::string weight = "linear";
  double w_max = 1.0;
  double threshold = 1.0;
};

struct DomainSpec {
  /// unit_ball | punctured_unit_ball | ball | box | whole_space; empty picks
  /// a default for the family and command.
  std::string shape;
  std::size_t dimension = 2;
  std::vector<double> center;
  double radius = 1.0;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::vector<double>> excluded;
};

enum class WitnessMode { given, search };

struct ConditionSpec {
  ConditionId id = ConditionId::A0;
  WitnessMode mode = WitnessMode::search;
  double beta = 1.0;
  /// Level c of h = c·χ_Ω (c·min{1,|x|^-(n+1)} on unbounded Ω): a number, "sigma" or "sigma/2".
  std::string h = "0";
  std::optional<double> sigma;
  /// p of aIncP, q of aDecQ.
  std::optional<double> exponent;
  /// Canonical text, e.g. "A2old(h=sigma)".
  std::string text;
};

struct FunctionSpec {
  /// bump | zero | csv
  std::string kind = "bump";
  std::vector<double> center;
  double radius = 0.5;
  double amplitude = 1.0;
  std::string path;
};

struct RunConfig {
  std::string label;
  FamilySpec family;
  DomainSpec domain;
  PlanOptions plan;
  std::vector<ConditionSpec> conditions;
  WitnessMode witness_mode = WitnessMode::search;
  double witness_beta = 1.0;
  std::string witness_h = "0";
  double sigma = 1.0;
  double beta_floor = 1e-3;
  double h_cap = 10.0;
  int search_depth = 60;
  std::size_t search_max_tuples = 0;
  std::vector<std::string> expect;

  FunctionSpec function;
  std::size_t grid_n = 2048;
  std::vector<double> grid_lo;
  std::vector<double> grid_hi;
  std::vector<double> eps = {0.2, 0.1, 0.05, 0.025, 0.0125};
  double threshold_fraction = 0.1;
};

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Parses one condition item such as "A2old(h=sigma)" or "A2phi(search)".
ConditionSpec parse_condition_spec(const std::string& text, const RunConfig& defaults);

/// --plan-depth
void set_plan_depth(RunConfig& config, int depth);
/// --expect holds,violated,...
void set_expect(RunConfig& config, const std::string& list);

/// The domain for check and suite runs.
SpatialDomain build_domain(const RunConfig& config);
PhiFamily build_family(const RunConfig& config, const SpatialDomain& domain);
SearchOptions build_search_options(const RunConfig& config);
/// Given-mode witness of a condition on `domain`.
Witness build_witness(const ConditionSpec& spec, const RunConfig& config, const SpatialDomain& domain);
/// Resolves "sigma", "sigma/2" or a number.
double resolve_level(const std::string& h, double sigma);

/// Density inputs: the sampled function and the family on its grid box.
SampledFunction build_function(const RunConfig& config);
SpatialDomain build_density_domain(const RunConfig& config, const UniformGrid& grid);

}  // namespace orlicz::cli
