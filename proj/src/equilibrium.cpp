#include "rspa/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rspa/lambert.hpp"

namespace rspa {

AuctionInstance::AuctionInstance(std::vector<double> means)
    : original_(std::move(means)) {
  if (original_.empty()) {
    throw std::invalid_argument("AuctionInstance: need at least one bidder");
  }
  for (double m : original_) {
    if (!(m > 0.0 && m < 1.0)) {
      throw std::domain_error("AuctionInstance: every mean must lie in (0,1)");
    }
  }
  order_.resize(original_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
    return original_[a] > original_[b];
  });
  sorted_.reserve(original_.size());
  for (int idx : order_) sorted_.push_back(original_[idx]);
}

double AuctionInstance::top_mean_average(int k) const {
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += sorted_[i];
  return sum / k;
}

std::vector<double> Equilibrium::inactive_means() const {
  std::vector<double> out;
  for (int i = active.k; i < instance.n(); ++i) {
    out.push_back(instance.sorted_mean(i));
  }
  return out;
}

double solve_alpha(int k, double mbar) {
  if (k < 1) throw std::invalid_argument("solve_alpha: k must be >= 1");
  if (!(mbar > 0.0 && mbar < 1.0)) {
    throw std::domain_error("solve_alpha: mbar must lie in (0,1)");
  }
  // RHS a*(1 - ln(a)/k) is continuous and strictly increasing on (0,1],
  // running from 0 to 1, so the bracket [tiny, 1] always holds the root.
  const auto residual = [&](double a) { return a * (1.0 - std::log(a) / k) - mbar; };
  double lo = 1e-300;
  double hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double solve_alpha_closed_form(int k, double mbar) {
  if (k < 1) throw std::invalid_argument("solve_alpha_closed_form: k must be >= 1");
  if (!(mbar > 0.0 && mbar < 1.0)) {
    throw std::domain_error("solve_alpha_closed_form: mbar must lie in (0,1)");
  }
  const double x = -k * mbar * std::exp(-static_cast<double>(k));
  return std::exp(k + lambert_w_minus1(x));
}

ActiveSet cutoff_k(const AuctionInstance& instance) {
  const int n = instance.n();
  for (int i = 2; i <= n; ++i) {
    const double mbar_prev = instance.top_mean_average(i - 1);
    const double alpha_prev = solve_alpha(i - 1, mbar_prev);
    if (instance.sorted_mean(i - 1) <= alpha_prev) {
      return ActiveSet{i - 1, mbar_prev, alpha_prev};
    }
  }
  const double mbar_n = instance.top_mean_average(n);
  return ActiveSet{n, mbar_n, solve_alpha(n, mbar_n)};
}

Equilibrium compute_equilibrium(const AuctionInstance& instance) {
  const ActiveSet active = cutoff_k(instance);
  const double alpha = active.alpha;
  const double denom = -alpha * std::log(alpha);
  std::vector<double> thetas(active.k);
  for (int i = 0; i < active.k; ++i) {
    thetas[i] = (instance.sorted_mean(i) - alpha) / denom;
  }
  return Equilibrium{instance, active, std::move(thetas)};
}

bool has_boundary_tie(const Equilibrium& eq) {
  for (int i = eq.active.k; i < eq.instance.n(); ++i) {
    if (eq.instance.sorted_mean(i) == eq.active.alpha) return true;
  }
  return false;
}

}  // namespace rspa
