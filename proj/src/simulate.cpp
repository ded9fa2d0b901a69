#include "rspa/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rspa {

namespace {

// Beta(2,2) is the law of the median of three independent uniforms.
double beta22(RngStream& rng) {
  double a = rng.next_uniform();
  double b = rng.next_uniform();
  double c = rng.next_uniform();
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return b;
}

// Welford accumulator; blocks combine exactly (Chan's pooled update), so the
// reduction is deterministic in block order and a constant revenue stream
// reports exactly zero variance.
struct BlockStats {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const BlockStats& other) {
    if (other.count == 0) return;
    const long long total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * (static_cast<double>(count) * other.count / total);
    count = total;
  }
};

}  // namespace

AuctionOutcome run_auction(const ValueProfile& profile, double reserve) {
  if (!(reserve >= 0.0 && reserve <= 1.0)) {
    throw std::domain_error("run_auction: reserve outside [0,1]");
  }
  if (!(profile.v1 > reserve)) return AuctionOutcome{};
  int winner = 0;
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    if (profile.values[i] == profile.v1) {
      winner = static_cast<int>(i);
      break;
    }
  }
  return AuctionOutcome{winner, std::max(profile.v2, reserve)};
}

Estimate estimate_psi(const ProfileSampler& profile_sampler,
                      const ReserveSampler& reserve_sampler, const SimConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("estimate_psi: trials must be >= 1");
  if (config.parallel_streams < 1) {
    throw std::invalid_argument("estimate_psi: parallel_streams must be >= 1");
  }

  const long long trials = config.trials;
  const int streams = static_cast<int>(
      std::min<long long>(config.parallel_streams, trials));
  const long long chunk = (trials + streams - 1) / streams;

  std::vector<BlockStats> blocks(streams);
  const auto worker = [&](int block) {
    const long long begin = block * chunk;
    const long long end = std::min(trials, begin + chunk);
    BlockStats stats;
    for (long long t = begin; t < end; ++t) {
      RngStream rng(config.seed, static_cast<std::uint64_t>(t));
      const ValueProfile profile = profile_sampler(rng);
      const double reserve = reserve_sampler(rng);
      stats.add(run_auction(profile, reserve).revenue);
    }
    blocks[block] = stats;
  };

  if (streams == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(streams);
    for (int b = 0; b < streams; ++b) pool.emplace_back(worker, b);
    for (auto& th : pool) th.join();
  }

  BlockStats total;
  for (const BlockStats& b : blocks) total.merge(b);  // fixed reduction order
  const double variance = total.count > 1 ? std::max(0.0, total.m2 / (total.count - 1)) : 0.0;
  return Estimate{total.mean, std::sqrt(variance / total.count), total.count};
}

ProfileSampler worst_case_sampler(const WorstCaseDist& dist) {
  return [dist](RngStream& rng) {
    const double u_select = rng.next_uniform();
    const double u_value = rng.next_uniform();
    return dist.sample(u_select, u_value);
  };
}

ReserveSampler equilibrium_reserve_sampler(const ReserveDist& dist) {
  return [dist](RngStream& rng) { return g_sample(dist, rng.next_uniform()); };
}

ReserveSampler degenerate_reserve_sampler(double reserve) {
  return [reserve](RngStream&) { return reserve; };
}

std::vector<Candidate> adversarial_candidates(const AuctionInstance& instance) {
  const Equilibrium eq = compute_equilibrium(instance);
  const WorstCaseDist worst(eq);
  const int n = instance.n();
  const std::vector<double> means = instance.original_means();

  std::vector<Candidate> candidates;

  candidates.push_back({"mean_point", [means](RngStream&) {
                          return ValueProfile::from_values(means);
                        }});

  candidates.push_back({"two_point_iid", [means, n](RngStream& rng) {
                          std::vector<double> v(n);
                          for (int i = 0; i < n; ++i) {
                            v[i] = rng.next_uniform() < means[i] ? 1.0 : 0.0;
                          }
                          return ValueProfile::from_values(std::move(v));
                        }});

  candidates.push_back({"scaled_beta_iid", [means, n](RngStream& rng) {
                          std::vector<double> v(n);
                          for (int i = 0; i < n; ++i) {
                            const double b = beta22(rng);
                            v[i] = means[i] <= 0.5 ? 2.0 * means[i] * b
                                                   : 1.0 - 2.0 * (1.0 - means[i]) * b;
                          }
                          return ValueProfile::from_values(std::move(v));
                        }});

  // Support shifted off the exact L-shape by +-epsilon on the high draw. The
  // shift alternates sign, so the means stay feasible up to O(alpha*epsilon)
  // and the revenue floor is preserved well inside Monte Carlo noise.
  candidates.push_back({"lshape_perturbed", [worst](RngStream& rng) {
                          const double u_select = rng.next_uniform();
                          const double u_value = rng.next_uniform();
                          const double shift = rng.next_uniform() < 0.5 ? 1e-3 : -1e-3;
                          ValueProfile p = worst.sample(u_select, u_value);
                          for (double& v : p.values) {
                            if (v == p.v1) {
                              v = std::clamp(v + shift, 0.0, 1.0);
                              break;
                            }
                          }
                          return ValueProfile::from_values(std::move(p.values));
                        }});

  candidates.push_back({"comonotone", [eq](RngStream& rng) {
                          const double u = rng.next_uniform();
                          const double alpha = eq.alpha();
                          std::vector<double> v(eq.instance.n());
                          for (int i = 0; i < eq.instance.n(); ++i) {
                            double value;
                            if (i >= eq.k()) {
                              value = eq.instance.sorted_mean(i);
                            } else if (u < 1.0 - eq.thetas[i]) {
                              value = alpha;
                            } else {
                              const double s = (u - (1.0 - eq.thetas[i])) / eq.thetas[i];
                              value = s < 1.0 - alpha ? alpha / (1.0 - s) : 1.0;
                            }
                            v[eq.instance.original_index(i)] = value;
                          }
                          return ValueProfile::from_values(std::move(v));
                        }});

  return candidates;
}

std::vector<SweepRow> asymptotic_sweep(double m, const std::vector<int>& n_list) {
  if (!(m > 0.0 && m < 1.0)) throw std::domain_error("asymptotic_sweep: m must lie in (0,1)");
  if (n_list.empty()) throw std::invalid_argument("asymptotic_sweep: empty n list");
  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("asymptotic_sweep: n must be >= 1");
    const double alpha = solve_alpha(n, m);
    const double log_alpha = std::log(alpha);
    rows.push_back(SweepRow{n, alpha, -log_alpha / (n - 1 - log_alpha), alpha});
  }
  return rows;
}

}  // namespace rspa
