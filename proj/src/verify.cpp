#include "rspa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rspa/distributions.hpp"
#include "rspa/game_oracle.hpp"
#include "rspa/revenue.hpp"
#include "rspa/rng.hpp"

namespace rspa {

namespace {

double simpson(double (*f)(double, const ReserveDist&), const ReserveDist& d,
               double a, double b, int intervals) {
  // composite Simpson, intervals must be even
  const double h = (b - a) / intervals;
  double sum = f(a, d) + f(b, d);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + i * h, d) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

double h_density_integrand(double v, const ReserveDist& d) {
  return d.alpha / (v * v);
}

// closed-form density expression, valid on the closed interval [alpha, 1]
// (g_density itself is the one-sided limit and vanishes at p = alpha)
double g_density_integrand(double p, const ReserveDist& d) {
  return 1.0 / (p * (d.k - 1 - std::log(d.alpha)));
}

Equilibrium with_alpha(const Equilibrium& eq, double alpha) {
  Equilibrium out = eq;
  out.active.alpha = alpha;
  return out;
}

ValueProfile support_profile(const Equilibrium& eq, int high, double x) {
  std::vector<double> values(eq.instance.n());
  for (int i = 0; i < eq.instance.n(); ++i) {
    values[i] = i < eq.k() ? (i == high ? x : eq.alpha()) : eq.instance.sorted_mean(i);
  }
  return ValueProfile::from_values(std::move(values));
}

}  // namespace

double verify_seller_best_response(const Equilibrium& eq, int grid_size) {
  return verify_seller_best_response(eq, grid_size, eq.revenue());
}

double verify_seller_best_response(const Equilibrium& eq, int grid_size,
                                   double reference_value) {
  if (grid_size < 2) throw std::invalid_argument("verify_seller_best_response: grid_size < 2");
  const WorstCaseDist worst(eq);
  const double alpha = eq.alpha();
  const double top = 1.0 - 1e-9;
  double residual = 0.0;
  const auto account = [&](double p) {
    const double diff = eta(p, worst) - reference_value;
    if (eq.k() >= 2 || p >= alpha) {
      residual = std::max(residual, std::abs(diff));
    } else {
      residual = std::max(residual, std::max(diff, 0.0));
    }
  };
  for (int i = 0; i < grid_size; ++i) {
    account(top * i / (grid_size - 1));
  }
  account(alpha);  // boundary of the piecewise form, checked explicitly
  return residual;
}

CertificateCheck verify_nature_best_response(const Equilibrium& eq, int samples,
                                             std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_nature_best_response: samples < 1");
  const int k = eq.k();
  const double alpha = eq.alpha();
  const ReserveDist reserve{alpha, k};
  const AffineCertificate cert = certificate(eq);

  CertificateCheck check;
  check.min_slack = std::numeric_limits<double>::infinity();

  std::vector<double> v(k);
  const auto account_slack = [&](const std::vector<double>& values) {
    const double slack = phi(ValueProfile::from_values(values), reserve) - cert.value(values);
    check.min_slack = std::min(check.min_slack, slack);
  };

  // Stratified case regions: second-highest above alpha / straddling / all below.
  RngStream rng(seed, 1);
  for (int s = 0; s < samples; ++s) {
    if (k == 1) {
      v[0] = s % 2 == 0 ? alpha + rng.next_uniform() * (1.0 - alpha)
                        : rng.next_uniform() * alpha;
    } else {
      const int region = s % 3;
      if (region == 0) {
        for (int i = 0; i < k; ++i) v[i] = rng.next_uniform();
        const int a = static_cast<int>(rng.next_u64() % k);
        int b = static_cast<int>(rng.next_u64() % (k - 1));
        if (b >= a) ++b;
        v[a] = alpha + rng.next_uniform() * (1.0 - alpha);
        v[b] = alpha + rng.next_uniform() * (1.0 - alpha);
      } else if (region == 1) {
        for (int i = 0; i < k; ++i) v[i] = rng.next_uniform() * alpha;
        v[static_cast<int>(rng.next_u64() % k)] = alpha + rng.next_uniform() * (1.0 - alpha);
      } else {
        for (int i = 0; i < k; ++i) v[i] = rng.next_uniform() * alpha;
      }
    }
    account_slack(v);
  }

  // Corner profiles of {alpha,1}^k; random subset once enumeration explodes.
  if (k <= 12) {
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
      for (int i = 0; i < k; ++i) v[i] = (mask >> i) & 1 ? 1.0 : alpha;
      account_slack(v);
    }
  } else {
    RngStream corner_rng(seed, 2);
    for (int s = 0; s < 4096; ++s) {
      const std::uint64_t mask = corner_rng.next_u64();
      for (int i = 0; i < k; ++i) v[i] = (mask >> (i % 64)) & 1 ? 1.0 : alpha;
      account_slack(v);
    }
  }

  // Tightness on the support: one bidder at x in [alpha,1], the rest at alpha.
  const int support_points = std::max(16, samples / 100);
  for (int s = 0; s < support_points; ++s) {
    const double x = s == 0            ? alpha
                     : s == 1          ? 1.0
                                       : alpha + (s - 1.5) / (support_points - 2) * (1.0 - alpha);
    std::fill(v.begin(), v.end(), alpha);
    v[s % k] = x;
    const double gap =
        std::abs(phi(ValueProfile::from_values(v), reserve) - cert.value(v));
    check.max_support_gap = std::max(check.max_support_gap, gap);
    account_slack(v);
  }
  return check;
}

ProjectionCheck verify_k_projection(const Equilibrium& eq, int samples, std::uint64_t seed) {
  ProjectionCheck check;
  if (eq.k() == eq.instance.n()) {
    check.skipped = true;
    return check;
  }
  const int n = eq.instance.n();
  const int k = eq.k();
  const ReserveDist reserve{eq.alpha(), k};

  // support_profile emits values in sorted-mean order, so the active
  // coordinates are exactly the first k entries.
  const auto project = [&](const std::vector<double>& full) {
    return ValueProfile::from_values(std::vector<double>(full.begin(), full.begin() + k));
  };

  // Support of F*: the inactive coordinates never enter the top two.
  const int support_points = std::max(16, samples / 100);
  for (int s = 0; s < support_points; ++s) {
    const double x = eq.alpha() + (s + 0.5) / support_points * (1.0 - eq.alpha());
    const ValueProfile full = support_profile(eq, s % k, x);
    const double diff = std::abs(phi(full, reserve) - phi(project(full.values), reserve));
    check.max_support_diff = std::max(check.max_support_diff, diff);
  }

  // Random profiles: dropping bidders can only lower the top two.
  check.min_random_gap = std::numeric_limits<double>::infinity();
  RngStream rng(seed, 4);
  std::vector<double> full(n);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) full[i] = rng.next_uniform();
    const double gap = phi(ValueProfile::from_values(full), reserve) -
                       phi(project(full), reserve);
    check.min_random_gap = std::min(check.min_random_gap, gap);
  }
  return check;
}

VerificationReport run_full_verification(const AuctionInstance& instance,
                                         const VerifyConfig& config) {
  const Equilibrium eq = compute_equilibrium(instance);
  const double alpha_built = eq.alpha() + config.alpha_perturbation;
  if (!(alpha_built > 0.0 && alpha_built < 1.0)) {
    throw std::domain_error("run_full_verification: perturbed alpha outside (0,1)");
  }
  const Equilibrium built = with_alpha(eq, alpha_built);

  VerificationReport report;
  report.alpha = eq.alpha();
  report.k = eq.k();

  report.max_indifference_residual =
      verify_seller_best_response(built, config.grid_size, eq.revenue());

  const CertificateCheck cert = verify_nature_best_response(built, config.samples, config.seed);
  report.min_certificate_slack = cert.min_slack;
  report.max_support_gap = cert.max_support_gap;

  const ReserveDist reserve{alpha_built, eq.k()};
  const HighestValueDist highest{alpha_built};
  for (int i = 0; i < instance.n(); ++i) {
    if (i < eq.k()) {
      const double model_mean =
          eq.thetas[i] * h_mean(highest) + (1.0 - eq.thetas[i]) * alpha_built;
      report.mean_constraint_residuals.push_back(std::abs(model_mean - instance.sorted_mean(i)));
    } else {
      report.mean_constraint_residuals.push_back(0.0);  // point mass at the mean
    }
  }

  const int quad_intervals = 20000;
  const double h_mass = alpha_built + simpson(h_density_integrand, reserve,
                                              alpha_built, 1.0, quad_intervals);
  const double g_mass = g_atom(reserve) + simpson(g_density_integrand, reserve,
                                                  alpha_built, 1.0, quad_intervals);
  report.mass_residual_h = std::abs(h_mass - 1.0);
  report.mass_residual_g = std::abs(g_mass - 1.0);
  double theta_sum = 0.0;
  for (double t : eq.thetas) theta_sum += t;
  report.mass_residual_f = std::abs(theta_sum * h_mass - 1.0);

  const ProjectionCheck projection = verify_k_projection(built, config.samples, config.seed);
  if (!projection.skipped) report.projection_residual = projection.max_support_diff;

  if (config.with_game_oracle) {
    const DiscretizedGame game =
        build_game(instance, config.oracle_value_grid, config.oracle_reserve_grid);
    const LPSolution lp = solve_minimax(game);
    report.game_value_gap = std::abs(lp.game_value - eq.alpha());
  }

  bool passed = report.max_indifference_residual <= config.tol_analytic &&
                report.min_certificate_slack >= -config.tol_slack &&
                report.max_support_gap <= config.tol_analytic &&
                report.mass_residual_h <= config.tol_analytic &&
                report.mass_residual_g <= config.tol_analytic &&
                report.mass_residual_f <= config.tol_analytic;
  for (double r : report.mean_constraint_residuals) passed = passed && r <= config.tol_analytic;
  if (!projection.skipped) {
    passed = passed && projection.max_support_diff <= 1e-12 &&
             projection.min_random_gap >= -1e-12;
  }
  if (report.game_value_gap) passed = passed && *report.game_value_gap <= config.oracle_tol;
  report.passed = passed;
  return report;
}

std::string report_to_json(const VerificationReport& report, const std::string& config_hash) {
  nlohmann::ordered_json j;
  j["alpha"] = report.alpha;
  j["k"] = report.k;
  j["max_indifference_residual"] = report.max_indifference_residual;
  j["min_certificate_slack"] = report.min_certificate_slack;
  j["max_support_gap"] = report.max_support_gap;
  j["mean_constraint_residuals"] = report.mean_constraint_residuals;
  j["mass_residuals"] = {{"h", report.mass_residual_h},
                         {"g_star", report.mass_residual_g},
                         {"f_star", report.mass_residual_f}};
  if (report.projection_residual) {
    j["projection_residual"] = *report.projection_residual;
  } else {
    j["projection_residual"] = nullptr;
  }
  if (report.game_value_gap) {
    j["game_value_gap"] = *report.game_value_gap;
  } else {
    j["game_value_gap"] = nullptr;
  }
  j["passed"] = report.passed;
  j["config_hash"] = config_hash;
  return j.dump(2) + "\n";
}

}  // namespace rspa
