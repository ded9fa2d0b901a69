#include "rspa/lambert.hpp"

#include <cmath>
#include <stdexcept>

namespace rspa {

// w*exp(w) is strictly decreasing on (-inf, -1], from 0- down to -1/e,
// so the branch is a plain monotone root-find. Bisection is used instead
// of Halley iteration: it cannot stall at the branch point w = -1 where
// the derivative vanishes, and this function is only a cross-check path.
double lambert_w_minus1(double x) {
  const double branch = -std::exp(-1.0);
  if (!(x < 0.0) || x < branch - 1e-12) {
    throw std::domain_error("lambert_w_minus1: argument outside [-1/e, 0)");
  }
  if (x <= branch) return -1.0;

  // e^w underflows to 0 below w ~ -745, so f(lo) = -0 > x for any double x < 0.
  double lo = -760.0;
  double hi = -1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f = mid * std::exp(mid);
    if (f > x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rspa
