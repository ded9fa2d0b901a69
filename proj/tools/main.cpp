#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rspa/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd) {
  // the config option lives on the root app; fallthrough lets it appear
  // after the subcommand name
  cmd->fallthrough();
}

void add_instance_options(CLI::App* cmd, rspa::RunConfig& config) {
  cmd->add_option("--means", config.means, "comma-separated bidder means in (0,1)")
      ->delimiter(',');
  cmd->add_option("--m", config.symmetric_m, "symmetric mean shorthand (with --n)");
  cmd->add_option("--n", config.symmetric_n, "bidder count for the symmetric shorthand");
}

void add_output_options(CLI::App* cmd, rspa::RunConfig& config) {
  cmd->add_option("--out", config.out_dir, "output directory (default: .)");
  cmd->add_flag("--json", config.json_to_stdout, "also print JSON results to stdout");
}

}  // namespace

int main(int argc, char** argv) {
  rspa::RunConfig config;
  CLI::App app{"robust second-price auction toolkit: equilibrium, verification, LP oracle, "
               "Monte Carlo simulation, and asymptotic sweeps"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "plain-text key=value config file with a [subcommand] section; flags "
                 "override it");

  CLI::App* eq = app.add_subcommand("equilibrium", "solve the closed-form equilibrium");
  add_common_options(eq);
  add_instance_options(eq, config);
  add_output_options(eq, config);

  CLI::App* verify = app.add_subcommand("verify", "run the saddle-point verification suite");
  add_common_options(verify);
  add_instance_options(verify, config);
  add_output_options(verify, config);
  verify->add_option("--verify-grid", config.verify_grid, "reserve grid for the indifference check");
  verify->add_option("--samples", config.samples, "stratified profile samples");
  verify->add_option("--seed", config.seed, "sampling seed");
  verify->add_option("--perturb-alpha", config.perturb_alpha,
                     "debug: rebuild the laws from alpha+delta (must fail verification)");
  verify->add_flag("--with-oracle", config.with_oracle, "also run the LP game oracle (n <= 3)");
  verify->add_option("--grid", config.grid, "oracle value grid size");
  verify->add_option("--reserve-grid", config.reserve_grid, "oracle reserve grid size");

  CLI::App* oracle = app.add_subcommand("oracle", "solve the discretized minimax LP (n <= 3)");
  add_common_options(oracle);
  add_instance_options(oracle, config);
  add_output_options(oracle, config);
  oracle->add_option("--grid", config.grid, "value grid size");
  oracle->add_option("--reserve-grid", config.reserve_grid, "reserve grid size");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo revenue estimates");
  add_common_options(simulate);
  add_instance_options(simulate, config);
  add_output_options(simulate, config);
  simulate->add_option("--trials", config.trials, "Monte Carlo trials");
  simulate->add_option("--seed", config.seed, "counter-based stream seed");
  simulate->add_option("--streams", config.parallel_streams, "parallel partial-sum streams");
  simulate->add_flag("!--no-candidates", config.run_candidates,
                     "skip the adversarial candidate battery");

  CLI::App* sweep = app.add_subcommand("sweep", "alpha(n) and reserve-mass asymptotics");
  add_common_options(sweep);
  add_output_options(sweep, config);
  sweep->add_option("--m", config.sweep_m, "symmetric mean in (0,1)");
  sweep->add_option("--n-from", config.n_from, "first bidder count");
  sweep->add_option("--n-to", config.n_to, "last bidder count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  try {
    return rspa::run_command(config);
  } catch (const rspa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
