#pragma once

#include <vector>

namespace rspa {

/// Mean constraints for one auction: n bidders, each marginal mean in (0,1).
/// Means are held sorted in descending order; the original bidder index of
/// every sorted slot is kept so profiles can be emitted in input order.
class AuctionInstance {
 public:
  explicit AuctionInstance(std::vector<double> means);

  int n() const { return static_cast<int>(sorted_.size()); }
  const std::vector<double>& original_means() const { return original_; }
  const std::vector<double>& sorted_means() const { return sorted_; }
  double sorted_mean(int i) const { return sorted_[i]; }
  /// Original bidder index of sorted slot i (stable under ties).
  int original_index(int i) const { return order_[i]; }
  /// Average of the top-k means, m̄_k.
  double top_mean_average(int k) const;

 private:
  std::vector<double> original_;
  std::vector<double> sorted_;
  std::vector<int> order_;
};

/// Active-bidder cutoff: top-k bidders enter the worst case, the rest sit at
/// their means. alpha solves mbar_k = alpha*(1 - ln(alpha)/k).
struct ActiveSet {
  int k = 0;
  double mbar_k = 0.0;
  double alpha = 0.0;
};

struct Equilibrium {
  AuctionInstance instance;
  ActiveSet active;
  std::vector<double> thetas;  // selection probabilities, sorted-mean order, size k

  int k() const { return active.k; }
  double alpha() const { return active.alpha; }
  /// Equilibrium revenue of the saddle point.
  double revenue() const { return active.alpha; }
  std::vector<double> inactive_means() const;
};

/// Unique alpha in (0, mbar) with mbar = alpha*(1 - ln(alpha)/k).
/// Bracketed bisection; absolute equation residual <= 1e-12.
double solve_alpha(int k, double mbar);

/// Same root via alpha = exp(k + W_{-1}(-k*mbar/e^k)). Cross-check path.
double solve_alpha_closed_form(int k, double mbar);

/// Incremental cutoff scan: start at i=2, stop at the first i whose mean
/// falls to or below alpha_{i-1}(m̄_{i-1}); k=n if none does.
ActiveSet cutoff_k(const AuctionInstance& instance);

Equilibrium compute_equilibrium(const AuctionInstance& instance);

/// True when some inactive mean equals alpha exactly (the tie is treated as
/// inactive; callers may want to surface the boundary case).
bool has_boundary_tie(const Equilibrium& eq);

}  // namespace rspa
