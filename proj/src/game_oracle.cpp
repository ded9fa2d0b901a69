#include "rspa/game_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rspa/simplex.hpp"

namespace rspa {

namespace {

std::vector<double> grid_with_injected(int size, double alpha) {
  std::vector<double> grid(size);
  for (int i = 0; i < size; ++i) grid[i] = static_cast<double>(i) / (size - 1);
  grid.push_back(alpha);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

std::size_t DiscretizedGame::profile_count() const {
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= value_grid.size();
  return count;
}

void DiscretizedGame::decode_profile(std::size_t index, std::vector<double>& values) const {
  values.resize(n);
  const std::size_t base = value_grid.size();
  for (int i = 0; i < n; ++i) {
    values[i] = value_grid[index % base];
    index /= base;
  }
}

DiscretizedGame build_game(const AuctionInstance& instance, int value_grid_size,
                           int reserve_grid_size) {
  if (instance.n() > 3) {
    throw std::invalid_argument("build_game: profile enumeration is capped at n <= 3");
  }
  if (value_grid_size < 2 || reserve_grid_size < 2) {
    throw std::invalid_argument("build_game: grid sizes must be >= 2");
  }

  DiscretizedGame game;
  game.n = instance.n();
  game.alpha = compute_equilibrium(instance).alpha();
  game.means = instance.sorted_means();
  game.value_grid = grid_with_injected(value_grid_size, game.alpha);
  game.reserve_grid = grid_with_injected(reserve_grid_size, game.alpha);

  const std::size_t profiles = game.profile_count();
  const std::size_t reserves = game.reserve_count();
  if (profiles * reserves > 50'000'000) {
    throw std::invalid_argument("build_game: payoff tensor too large");
  }

  game.payoff.resize(profiles * reserves);
  std::vector<double> values;
  for (std::size_t p = 0; p < profiles; ++p) {
    game.decode_profile(p, values);
    double v1 = values[0];
    double v2 = 0.0;
    for (int i = 1; i < game.n; ++i) {
      if (values[i] > v1) {
        v2 = v1;
        v1 = values[i];
      } else if (values[i] > v2) {
        v2 = values[i];
      }
    }
    double* row = game.payoff.data() + p * reserves;
    for (std::size_t r = 0; r < reserves; ++r) {
      const double reserve = game.reserve_grid[r];
      row[r] = v1 > reserve ? std::max(v2, reserve) : 0.0;
    }
  }
  return game;
}

NatureResponse nature_best_response(const DiscretizedGame& game,
                                    const std::vector<double>& seller_mixture) {
  const std::size_t profiles = game.profile_count();
  const std::size_t reserves = game.reserve_count();
  if (seller_mixture.size() != reserves) {
    throw std::invalid_argument("nature_best_response: mixture size != reserve grid");
  }

  LpProblem lp;
  lp.num_vars = static_cast<int>(profiles);
  lp.objective.resize(profiles);
  for (std::size_t p = 0; p < profiles; ++p) {
    double expected = 0.0;
    const double* row = game.payoff.data() + p * reserves;
    for (std::size_t r = 0; r < reserves; ++r) expected += seller_mixture[r] * row[r];
    lp.objective[p] = expected;
  }

  std::vector<double> values;
  for (int i = 0; i < game.n; ++i) {
    std::vector<double> row(profiles);
    for (std::size_t p = 0; p < profiles; ++p) {
      game.decode_profile(p, values);
      row[p] = values[i];
    }
    lp.add_row(std::move(row), LpProblem::Rel::eq, game.means[i]);
  }
  lp.add_row(std::vector<double>(profiles, 1.0), LpProblem::Rel::eq, 1.0);

  const LpResult result = lp_solve(lp);
  if (result.status != LpStatus::optimal) {
    throw SolverError(std::string("nature_best_response: LP ") + lp_status_name(result.status) +
                          " after " + std::to_string(result.iterations) + " iterations",
                      result.status, result.iterations);
  }
  return NatureResponse{result.x, result.objective};
}

LPSolution solve_minimax(const DiscretizedGame& game) {
  const std::size_t profiles = game.profile_count();
  const std::size_t reserves = game.reserve_count();

  // Nature-side form of the minimax LP: minimize t over (F >= 0, t >= 0) with
  //   sum_v F_v payoff(v, p) - t <= 0        for every reserve p
  //   sum_v F_v v_i = m_i,  sum_v F_v = 1.
  // Its duals are the seller mixture (reserve rows), gamma (mean rows), and
  // eta (normalization); t >= 0 is harmless since payoffs are nonnegative.
  LpProblem lp;
  lp.num_vars = static_cast<int>(profiles) + 1;
  lp.objective.assign(lp.num_vars, 0.0);
  lp.objective.back() = 1.0;

  for (std::size_t r = 0; r < reserves; ++r) {
    std::vector<double> row(lp.num_vars, 0.0);
    for (std::size_t p = 0; p < profiles; ++p) row[p] = game.payoff_at(p, r);
    row.back() = -1.0;
    lp.add_row(std::move(row), LpProblem::Rel::less_eq, 0.0);
  }
  std::vector<double> values;
  for (int i = 0; i < game.n; ++i) {
    std::vector<double> row(lp.num_vars, 0.0);
    for (std::size_t p = 0; p < profiles; ++p) {
      game.decode_profile(p, values);
      row[p] = values[i];
    }
    lp.add_row(std::move(row), LpProblem::Rel::eq, game.means[i]);
  }
  {
    std::vector<double> row(lp.num_vars, 1.0);
    row.back() = 0.0;
    lp.add_row(std::move(row), LpProblem::Rel::eq, 1.0);
  }

  const LpResult result = lp_solve(lp);
  if (result.status != LpStatus::optimal) {
    throw SolverError(std::string("solve_minimax: LP ") + lp_status_name(result.status) +
                          " after " + std::to_string(result.iterations) + " iterations",
                      result.status, result.iterations);
  }

  LPSolution solution;
  solution.game_value = result.objective;
  solution.iterations = result.iterations;
  solution.nature_mass.assign(result.x.begin(), result.x.begin() + profiles);

  // less_eq duals are <= 0 for a minimization; the seller weight is -y.
  solution.seller_mixture.resize(reserves);
  double weight_sum = 0.0;
  for (std::size_t r = 0; r < reserves; ++r) {
    solution.seller_mixture[r] = std::max(-result.duals[r], 0.0);
    weight_sum += solution.seller_mixture[r];
  }
  if (weight_sum > 0.0) {
    for (double& w : solution.seller_mixture) w /= weight_sum;
  }
  solution.dual_gamma.resize(game.n);
  for (int i = 0; i < game.n; ++i) solution.dual_gamma[i] = result.duals[reserves + i];
  solution.dual_eta = result.duals[reserves + game.n];
  return solution;
}

}  // namespace rspa
