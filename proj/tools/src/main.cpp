// gnmetric: axiom checks, sequence diagnostics and certified fixed-point
// solvers for generalized n-metric spaces.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gnmetric/errors.hpp"
#include "gnmetric_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace gnmetric::cli;

  CLI::App app{"Generalized n-metric toolkit: axiom verification, convergence/Cauchy "
               "diagnostics and certified fixed-point solvers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Path to the run configuration (JSON)")
        ->required();
    sub->add_option("--out", out_path, "Report output path (overrides the config)");
    sub->add_option("--seed", seed, "Seed override for sampled checks")
        ->each([&](const std::string&) { seed_given = true; });
  };

  std::string which = "all";
  CLI::App* check = app.add_subcommand("check-axioms", "Run axiom suites against the metric");
  add_common(check);
  check->add_option("--which", which, "Suite: g, k, metric, prop, ball or all")
      ->default_val("all");

  int theorem = 1;
  CLI::App* solve = app.add_subcommand("solve", "Run a certified fixed-point solver");
  add_common(solve);
  solve->add_option("--theorem", theorem, "1 = commuting pair, 2 = quasi-contraction")
      ->required();

  std::string analysis;
  CLI::App* analyze = app.add_subcommand("analyze", "Sequence diagnostics");
  add_common(analyze);
  analyze->add_option("--analysis", analysis, "convergence, cauchy or continuity")->required();

  CLI::App* derive = app.add_subcommand("derive-metric", "Print d_G for the configured pairs");
  add_common(derive);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  CommonOpts opts;
  opts.config_path = config_path;
  if (!out_path.empty()) opts.out_path = out_path;
  if (seed_given) opts.seed_override = seed;

  try {
    if (check->parsed()) return cmd_check_axioms(opts, which);
    if (solve->parsed()) return cmd_solve(opts, theorem);
    if (analyze->parsed()) return cmd_analyze(opts, analysis);
    if (derive->parsed()) return cmd_derive_metric(opts);
  } catch (const gnmetric::hypothesis_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const gnmetric::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
