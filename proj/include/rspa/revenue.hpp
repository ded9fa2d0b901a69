#pragma once

#include <vector>

#include "rspa/distributions.hpp"
#include "rspa/equilibrium.hpp"

namespace rspa {

/// Supporting affine function L(v) = sum_i coeffs[i]*v_i + intercept on the
/// k active coordinates. All coefficients equal 1/(k-1-ln alpha).
struct AffineCertificate {
  std::vector<double> coeffs;
  double intercept = 0.0;

  double value(const std::vector<double>& v) const;
};

/// A mechanism's payoff-relevant interim allocations: X_i(1) and X_i(alpha)
/// per active bidder.
struct InterimAllocation {
  std::vector<double> x_at_one;
  std::vector<double> x_at_alpha;
};

/// Expected auction revenue at profile v when the reserve is drawn from g:
/// E[max{v2,r} 1{v1 > r}], in closed form (sale only on v1 strictly above r).
double phi(const ValueProfile& v, const ReserveDist& g);

/// Seller's expected revenue under deterministic reserve p against the worst
/// case: alpha for p <= alpha (second-highest is pinned there), p*(1-H(p)) on
/// (alpha,1), and 0 at p = 1 (the atom of H ties and ties break against the
/// seller). For k = 1 there is no second bidder, so p <= alpha yields p.
double eta(double p, const WorstCaseDist& d);

/// Equilibrium revenue: alpha.
double psi_closed_form(const Equilibrium& eq);

AffineCertificate certificate(const Equilibrium& eq);

/// Virtual value v - (H(1-) - H(v))/h(v) on (alpha,1); simplifies to v^2.
/// Computed in quotient form. Throws std::domain_error off (alpha,1).
double virtual_value(double v, double alpha);

/// Revenue of a mechanism against the worst case given its interim
/// allocations: sum_i theta_i*alpha*X_i(1) + (1-theta_i)*alpha*X_i(alpha).
double competitive_mechanism_revenue(const Equilibrium& eq, const InterimAllocation& alloc);

/// Revenue of the two-bidder handicap mechanism: alpha + alpha*(1-alpha),
/// strictly above alpha.
double counterexample_revenue(double alpha);

}  // namespace rspa
