#include "rspa/revenue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rspa {

double AffineCertificate::value(const std::vector<double>& v) const {
  if (v.size() != coeffs.size()) {
    throw std::invalid_argument("AffineCertificate: dimension mismatch");
  }
  double sum = intercept;
  for (std::size_t i = 0; i < v.size(); ++i) sum += coeffs[i] * v[i];
  return sum;
}

double phi(const ValueProfile& v, const ReserveDist& g) {
  const double scale = g.k - 1 - std::log(g.alpha);
  // Reserves at or below v2 pay v2 (the lone atom at 0 is below any v2);
  // reserves in (v2, v1) pay the reserve itself, and p*density = 1/scale on
  // (alpha, 1], so that piece integrates to the clamped interval length.
  const auto clamp = [&](double x) { return std::clamp(x, g.alpha, 1.0); };
  return v.v2 * g_cdf(g, v.v2) + (clamp(v.v1) - clamp(v.v2)) / scale;
}

double eta(double p, const WorstCaseDist& d) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("eta: reserve outside [0,1]");
  }
  const double alpha = d.equilibrium().alpha();
  if (p >= 1.0) return 0.0;
  if (p <= alpha) {
    // Sale is certain; revenue is max{second-highest, p}.
    return d.equilibrium().k() >= 2 ? alpha : p;
  }
  return p * (1.0 - h_cdf(HighestValueDist{alpha}, p));
}

double psi_closed_form(const Equilibrium& eq) { return eq.alpha(); }

AffineCertificate certificate(const Equilibrium& eq) {
  const double scale = eq.k() - 1 - std::log(eq.alpha());
  AffineCertificate cert;
  cert.coeffs.assign(eq.k(), 1.0 / scale);
  cert.intercept = -eq.alpha() / scale;
  return cert;
}

double virtual_value(double v, double alpha) {
  if (!(v > alpha && v < 1.0)) {
    throw std::domain_error("virtual_value: v must lie in (alpha, 1)");
  }
  const double tail = (1.0 - alpha) - (v - alpha) / v;  // H(1-) - H(v)
  const double density = alpha / (v * v);
  return v - tail / density;
}

double competitive_mechanism_revenue(const Equilibrium& eq, const InterimAllocation& alloc) {
  const std::size_t k = static_cast<std::size_t>(eq.k());
  if (alloc.x_at_one.size() != k || alloc.x_at_alpha.size() != k) {
    throw std::invalid_argument("competitive_mechanism_revenue: allocation size != k");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!(alloc.x_at_one[i] >= 0.0 && alloc.x_at_one[i] <= 1.0) ||
        !(alloc.x_at_alpha[i] >= 0.0 && alloc.x_at_alpha[i] <= 1.0)) {
      throw std::domain_error("competitive_mechanism_revenue: allocations must lie in [0,1]");
    }
  }
  const double alpha = eq.alpha();
  double revenue = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    revenue += eq.thetas[i] * alpha * alloc.x_at_one[i] +
               (1.0 - eq.thetas[i]) * alpha * alloc.x_at_alpha[i];
  }
  return revenue;
}

double counterexample_revenue(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("counterexample_revenue: alpha must lie in (0,1)");
  }
  return alpha + alpha * (1.0 - alpha);
}

}  // namespace rspa
