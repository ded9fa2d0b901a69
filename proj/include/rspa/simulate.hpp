#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rspa/distributions.hpp"
#include "rspa/equilibrium.hpp"
#include "rspa/rng.hpp"

namespace rspa {

struct SimConfig {
  long long trials = 1'000'000;
  std::uint64_t seed = 1;
  int parallel_streams = 1;
};

struct AuctionOutcome {
  int winner = -1;  // -1: no sale
  double revenue = 0.0;
};

/// One second-price auction round: the highest bidder wins iff v1 strictly
/// exceeds the reserve (value ties among bidders go to the lowest index);
/// revenue is max{v2, reserve} on sale and 0 otherwise.
AuctionOutcome run_auction(const ValueProfile& profile, double reserve);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

using ProfileSampler = std::function<ValueProfile(RngStream&)>;
using ReserveSampler = std::function<double(RngStream&)>;

/// Sample mean and standard error of auction revenue with the profile and
/// reserve drawn independently per trial. Trial t always consumes the
/// counter-based stream (seed, t), so results are reproducible and identical
/// under any parallel partition; only the partial-sum grouping follows
/// parallel_streams.
Estimate estimate_psi(const ProfileSampler& profile_sampler,
                      const ReserveSampler& reserve_sampler, const SimConfig& config);

ProfileSampler worst_case_sampler(const WorstCaseDist& dist);
ReserveSampler equilibrium_reserve_sampler(const ReserveDist& dist);
ReserveSampler degenerate_reserve_sampler(double reserve);

struct Candidate {
  std::string name;
  ProfileSampler sampler;
};

/// Fixed battery of mean-feasible stress distributions: point mass at the
/// mean vector, independent two-point {0,1} marginals, independent scaled-beta
/// marginals, a +-1e-3 perturbed L-shape, and the comonotone coupling of the
/// worst case's marginals.
std::vector<Candidate> adversarial_candidates(const AuctionInstance& instance);

struct SweepRow {
  int n = 0;
  double alpha_n = 0.0;
  double reserve_mass_above_zero = 0.0;
  double revenue = 0.0;
};

/// Symmetric-mean asymptotics: alpha(n), the reserve mass above zero
/// -ln(alpha)/(n-1-ln(alpha)), and the revenue alpha(n) per requested n.
std::vector<SweepRow> asymptotic_sweep(double m, const std::vector<int>& n_list);

}  // namespace rspa
