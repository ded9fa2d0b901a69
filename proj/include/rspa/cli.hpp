#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rspa {

/// Bad or inconsistent user input; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<double> means;    // explicit list; empty -> use (m, n) shorthand
  double symmetric_m = -1.0;
  int symmetric_n = 0;
  std::uint64_t seed = 1;
  long long trials = 1'000'000;
  int parallel_streams = 1;
  int grid = 101;          // oracle value grid size
  int reserve_grid = 101;  // oracle reserve grid size
  int verify_grid = 10000;
  int samples = 100000;
  double perturb_alpha = 0.0;
  bool with_oracle = false;
  bool run_candidates = true;
  double sweep_m = -1.0;
  int n_from = 0;
  int n_to = -1;
  std::string out_dir = ".";
  bool json_to_stdout = false;
};

/// Resolved mean list: --means wins, otherwise the (--m, --n) shorthand.
std::vector<double> resolve_means(const RunConfig& config);

/// FNV-1a hash of the canonical config string; stamped on every file output.
std::string config_hash(const RunConfig& config);

int cmd_equilibrium(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_oracle(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
int cmd_sweep(const RunConfig& config);

/// Dispatch on config.command. Exit codes: 0 success/pass, 1 verification
/// failure, 2 usage or config error.
int run_command(const RunConfig& config);

}  // namespace rspa
