#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rspa/equilibrium.hpp"

namespace rspa {

struct VerifyConfig {
  int grid_size = 10000;       // reserve grid for the indifference check
  int samples = 100000;        // stratified profiles for the certificate check
  std::uint64_t seed = 7;
  double tol_analytic = 1e-9;  // two-sided residual tolerance
  double tol_slack = 1e-9;     // allowed certificate undershoot (phi >= L - tol)
  double alpha_perturbation = 0.0;  // fault injection: rebuild laws from alpha+delta
  bool with_game_oracle = false;    // n <= 3 only
  int oracle_value_grid = 101;
  int oracle_reserve_grid = 101;
  double oracle_tol = 0.01;
};

/// Worst-case residuals of every saddle-point condition. passed is true iff
/// each residual clears its configured tolerance.
struct VerificationReport {
  double alpha = 0.0;
  int k = 0;
  double max_indifference_residual = 0.0;
  double min_certificate_slack = 0.0;  // min over samples of phi - L
  double max_support_gap = 0.0;        // max |phi - L| on supp F*
  std::vector<double> mean_constraint_residuals;  // sorted-mean order
  double mass_residual_h = 0.0;
  double mass_residual_g = 0.0;
  double mass_residual_f = 0.0;
  std::optional<double> projection_residual;  // empty when k = n
  std::optional<double> game_value_gap;       // empty unless the LP oracle ran
  bool passed = false;
};

std::string report_to_json(const VerificationReport& report, const std::string& config_hash);

/// Max indifference residual of eta against the claimed revenue on a grid of
/// [0, 1-1e-9]. For k = 1 the two-sided check applies on [alpha, 1) only and
/// reserves below alpha contribute their one-sided excess (eta - value)+,
/// since G* has no mass there in the single-buyer specialization.
double verify_seller_best_response(const Equilibrium& eq, int grid_size);
double verify_seller_best_response(const Equilibrium& eq, int grid_size, double reference_value);

struct CertificateCheck {
  double min_slack = 0.0;
  double max_support_gap = 0.0;
};

/// phi >= L over stratified samples of the three case regions (second-highest
/// above alpha; straddling; all below alpha), all corners of {alpha,1}^k (or
/// 4096 random corners when k > 12), and tightness on support points.
CertificateCheck verify_nature_best_response(const Equilibrium& eq, int samples,
                                             std::uint64_t seed);

struct ProjectionCheck {
  bool skipped = false;
  double max_support_diff = 0.0;  // |phi(full) - phi(projected)| on supp F*
  double min_random_gap = 0.0;    // min of phi(full) - phi(projected), random profiles
};

/// Full-profile vs active-subset revenue. Skipped when k = n.
ProjectionCheck verify_k_projection(const Equilibrium& eq, int samples, std::uint64_t seed);

VerificationReport run_full_verification(const AuctionInstance& instance,
                                         const VerifyConfig& config);

}  // namespace rspa
