#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "orlicz/cli/commands.hpp"
#include "orlicz/cli/config.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<int> plan_depth;
  std::optional<std::string> expect;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key = value configuration file")->required();
  cmd->add_option("--out", f.out, "directory for reports (nothing is written when omitted)");
  cmd->add_option("--plan-depth", f.plan_depth, "refinement depth of the sample plan");
  cmd->add_option("--expect", f.expect, "expected verdicts, e.g. holds,violated");
}

orlicz::cli::RunConfig load(const Flags& f) {
  orlicz::cli::RunConfig config = orlicz::cli::load_config(f.config);
  if (f.plan_depth) orlicz::cli::set_plan_depth(config, *f.plan_depth);
  if (f.expect) orlicz::cli::set_expect(config, *f.expect);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Orlicz Φ-functions: inverses, conjugates and the (A0)/(A1)/(A2) conditions"};
  app.require_subcommand(1);
  Flags flags;

  auto* check = app.add_subcommand("check", "run the configured condition checks");
  add_run_flags(check, flags);
  auto* suite = app.add_subcommand("suite", "run the implication suite over the five (A2) formulations");
  add_run_flags(suite, flags);
  auto* density = app.add_subcommand("density", "mollification convergence in the Luxemburg norm");
  add_run_flags(density, flags);
  auto* gallery = app.add_subcommand("gallery", "built-in families");
  gallery->require_subcommand(1);
  auto* list = gallery->add_subcommand("list", "list the families a config can name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return orlicz::cli::ExitCode::usage;
  }

  try {
    if (list->parsed()) return orlicz::cli::gallery_list(std::cout);
    const orlicz::cli::RunConfig config = load(flags);
    if (check->parsed()) return orlicz::cli::run_check(config, flags.out, std::cout);
    if (suite->parsed()) return orlicz::cli::run_suite(config, flags.out, std::cout);
    if (density->parsed()) return orlicz::cli::run_density(config, flags.out, std::cout);
  } catch (const orlicz::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return orlicz::cli::ExitCode::usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return orlicz::cli::ExitCode::usage;
  }
  return orlicz::cli::ExitCode::usage;
}
