#pragma once

#include <string>

#include "json.hpp"
#include "orlicz/cli/config.hpp"
#include "orlicz/conditions.hpp"
#include "orlicz/modular.hpp"

namespace orlicz::cli {

using Json = nlohmann::ordered_json;

/// Finite numbers as JSON numbers, the rest as "inf", "-inf" or "nan".
Json number(double v);
Json point(const Point& p);

/// Every setting that influences a run, defaults filled in.
Json resolved_config(const RunConfig& config);

Json to_json(const Violation& v, ConditionId id);
Json to_json(const Witness& w);
/// condition_id, verdict, beta, h_form, sigma, worst_tuple, residual, then the rest.
Json to_json(const ConditionReport& r, double sigma);
Json to_json(const EdgeResult& e);
Json to_json(const SuiteResult& s, double sigma);
Json to_json(const DensityResult& d, const std::vector<double>& eps);

/// Header line of the certificate sidecar, then one row per violation.
std::string certificate_csv_header();
std::string certificate_csv_row(const std::string& label, const ConditionReport& r);

}  // namespace orlicz::cli
