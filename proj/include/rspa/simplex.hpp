#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rspa {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* lp_status_name(LpStatus status);

/// Dense LP in the form: minimize c·x subject to row_i·x (rel_i) rhs_i, x >= 0.
struct LpProblem {
  enum class Rel { less_eq, eq, greater_eq };

  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Rel> rels;
  std::vector<double> rhs;

  void add_row(std::vector<double> coeffs, Rel rel, double b);
};

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  double objective = 0.0;
  std::vector<double> x;
  /// One multiplier per input row, in the row's original orientation: for a
  /// minimization, duals are <= 0 on less_eq rows, >= 0 on greater_eq rows,
  /// free on eq rows, and satisfy rhs·dual = objective at an optimum.
  std::vector<double> duals;
  int iterations = 0;
};

/// Two-phase dense tableau simplex. Dantzig pricing with a switch to Bland's
/// rule after a run of degenerate pivots, which guarantees termination.
LpResult lp_solve(const LpProblem& problem, int max_iterations = 20000);

/// Raised by callers that require an optimal LP solution.
struct SolverError : std::runtime_error {
  SolverError(const std::string& what, LpStatus status_, int iterations_)
      : std::runtime_error(what), status(status_), iterations(iterations_) {}
  LpStatus status;
  int iterations;
};

}  // namespace rspa
