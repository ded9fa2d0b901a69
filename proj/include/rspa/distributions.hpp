#pragma once

#include <string>
#include <vector>

#include "rspa/equilibrium.hpp"

namespace rspa {

/// Highest-bidder value law H: density alpha/v^2 on (alpha,1), atom alpha at 1.
struct HighestValueDist {
  double alpha;
};

/// CDF of H, right-continuous. Throws std::domain_error outside [0,1].
double h_cdf(const HighestValueDist& d, double v);
/// Left limit of the CDF (differs from h_cdf only at the atom v = 1).
double h_cdf_left(const HighestValueDist& d, double v);
/// Inverse-CDF draw from a uniform u in [0,1).
double h_sample(const HighestValueDist& d, double u);
/// Mean of H: alpha*(1 - ln(alpha)).
double h_mean(const HighestValueDist& d);

/// Seller's random-reserve law G*: atom (k-1)/(k-1-ln alpha) at p = 0,
/// density 1/(p*(k-1-ln alpha)) on (alpha,1], no mass on (0,alpha].
struct ReserveDist {
  double alpha;
  int k;
};

/// Mass of the atom at p = 0.
double g_atom(const ReserveDist& d);
double g_cdf(const ReserveDist& d, double p);
double g_cdf_left(const ReserveDist& d, double p);
/// Density on (alpha,1]; zero elsewhere.
double g_density(const ReserveDist& d, double p);
double g_sample(const ReserveDist& d, double u);

/// A point of [0,1]^n with cached first and second order statistics.
struct ValueProfile {
  std::vector<double> values;
  double v1 = 0.0;  // highest value
  double v2 = 0.0;  // second-highest value (0 when n = 1)

  static ValueProfile from_values(std::vector<double> values);
};

/// Nature's worst case F*: one active bidder, chosen with probability
/// theta_i, draws from H; the other active bidders sit at alpha; inactive
/// bidders sit at their means.
class WorstCaseDist {
 public:
  explicit WorstCaseDist(Equilibrium eq);

  const Equilibrium& equilibrium() const { return eq_; }
  /// Draw a profile (original bidder order) from two uniforms in [0,1).
  ValueProfile sample(double u_select, double u_value) const;

 private:
  Equilibrium eq_;
  std::vector<double> theta_cum_;
};

ValueProfile f_sample(const WorstCaseDist& d, double u_select, double u_value);

/// True iff the CDF of h_large lies pointwise at or below the CDF of
/// h_small on a 10^4-point grid of [0,1] (first-order dominance).
bool fosd_compare(const HighestValueDist& h_small, const HighestValueDist& h_large);

/// Plain-text record of the equilibrium laws: alpha, k, thetas, inactive means.
std::string to_record(const Equilibrium& eq);

}  // namespace rspa
