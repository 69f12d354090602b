#pragma once

#include <iosfwd>
#include <string>

#include "orlicz/cli/config.hpp"

namespace orlicz::cli {

enum ExitCode : int { pass = 0, mismatch = 1, usage = 2 };

/// Runs the configured conditions. Writes one JSON report per condition,
/// report.json, summary.txt and, when something is violated,
/// certificates.csv into `out_dir` (nothing is written when it is empty).
int run_check(const RunConfig& config, const std::string& out_dir, std::ostream& log);

/// The implication suite. Writes suite.json, edges.csv and summary.txt.
/// Exit 1 on an inconsistency or when the formulation verdicts differ from `expect`.
int run_suite(const RunConfig& config, const std::string& out_dir, std::ostream& log);

/// The mollification experiment. Writes density.csv, density.json and
/// summary.txt, plus a1_certificate.csv when the (A1) precondition fails.
int run_density(const RunConfig& config, const std::string& out_dir, std::ostream& log);

int gallery_list(std::ostream& out);

}  // namespace orlicz::cli
