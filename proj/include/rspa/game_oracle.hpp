#pragma once

#include <cstddef>
#include <vector>

#include "rspa/equilibrium.hpp"

namespace rspa {

/// Finite zero-sum game between seller (reserve grid) and nature (value-grid
/// profiles). Both grids contain 0, 1, and the analytic alpha exactly, so the
/// equilibrium support is representable. Desk scale only: n <= 3.
struct DiscretizedGame {
  int n = 0;
  double alpha = 0.0;               // analytic alpha injected into the grids
  std::vector<double> means;        // sorted descending
  std::vector<double> value_grid;   // sorted ascending
  std::vector<double> reserve_grid; // sorted ascending
  std::vector<double> payoff;       // profile-major: payoff[p * reserves + r]

  std::size_t profile_count() const;
  std::size_t reserve_count() const { return reserve_grid.size(); }
  void decode_profile(std::size_t index, std::vector<double>& values) const;
  double payoff_at(std::size_t profile, std::size_t reserve) const {
    return payoff[profile * reserve_grid.size() + reserve];
  }
};

DiscretizedGame build_game(const AuctionInstance& instance, int value_grid_size,
                           int reserve_grid_size);

struct NatureResponse {
  std::vector<double> profile_mass;
  double value = 0.0;
};

/// Nature's minimizing distribution over grid profiles against a fixed seller
/// mixture, subject to the per-bidder mean-equality constraints.
NatureResponse nature_best_response(const DiscretizedGame& game,
                                    const std::vector<double>& seller_mixture);

/// Value and strategies of the discretized game, plus the dual affine
/// certificate (gamma, eta): gamma.v + eta <= expected payoff under the
/// seller mixture for every grid profile, with equality on nature's support.
struct LPSolution {
  double game_value = 0.0;
  std::vector<double> seller_mixture;
  std::vector<double> dual_gamma;
  double dual_eta = 0.0;
  std::vector<double> nature_mass;
  int iterations = 0;
};

/// Solves the one-shot minimax LP: maximize gamma.m + eta over seller weights
/// w >= 0 (sum 1), gamma, eta, subject to payoff(v,.)·w >= gamma.v + eta for
/// every grid profile v. Throws SolverError when the LP solve fails.
LPSolution solve_minimax(const DiscretizedGame& game);

}  // namespace rspa
