#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "rspa/distributions.hpp"
#include "rspa/revenue.hpp"
#include "rspa/simulate.hpp"

using namespace rspa;

namespace {

Equilibrium flagship2() { return compute_equilibrium(AuctionInstance({0.5, 0.5})); }

}  // namespace

TEST_CASE("run_auction outcomes") {
  const ValueProfile p = ValueProfile::from_values({0.8, 0.3});
  CHECK(run_auction(p, 0.5).winner == 0);
  CHECK(run_auction(p, 0.5).revenue == 0.5);
  CHECK(run_auction(p, 0.2).revenue == 0.3);
  CHECK(run_auction(p, 0.9).winner == -1);
  CHECK(run_auction(p, 0.9).revenue == 0.0);

  // value tie at the reserve: no sale
  const ValueProfile tie = ValueProfile::from_values({0.5, 0.5});
  CHECK(run_auction(tie, 0.5).winner == -1);

  // tied winners go to the lowest index
  const ValueProfile tied_top = ValueProfile::from_values({0.7, 0.7});
  CHECK(run_auction(tied_top, 0.2).winner == 0);
  CHECK(run_auction(tied_top, 0.2).revenue == 0.7);

  CHECK(run_auction(ValueProfile::from_values({0.4}), 0.3).revenue == 0.3);
  CHECK_THROWS_AS(run_auction(p, 1.5), std::domain_error);
}

TEST_CASE("estimate_psi hits alpha at the saddle") {
  const Equilibrium eq = flagship2();
  const WorstCaseDist f(eq);
  const ReserveDist g{eq.alpha(), eq.k()};
  const Estimate est = estimate_psi(worst_case_sampler(f), equilibrium_reserve_sampler(g),
                                    SimConfig{1'000'000, 42, 1});
  CHECK(std::abs(est.mean - eq.alpha()) <= 3.0 * est.std_error);
}

TEST_CASE("estimate_psi is reproducible and stream-count independent") {
  const Equilibrium eq = flagship2();
  const WorstCaseDist f(eq);
  const ReserveDist g{eq.alpha(), eq.k()};
  const auto run = [&](int streams) {
    return estimate_psi(worst_case_sampler(f), equilibrium_reserve_sampler(g),
                        SimConfig{100'000, 7, streams});
  };
  const Estimate a = run(1);
  const Estimate b = run(1);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const Estimate c = run(4);
  const Estimate d = run(4);
  CHECK(c.mean == d.mean);
  // per-trial streams: identical draws, only the reduction grouping differs
  CHECK(std::abs(a.mean - c.mean) <= 1e-12);
}

TEST_CASE("degenerate zero reserve pays alpha with zero variance") {
  const Equilibrium eq = flagship2();
  const WorstCaseDist f(eq);
  const Estimate est = estimate_psi(worst_case_sampler(f), degenerate_reserve_sampler(0.0),
                                    SimConfig{50'000, 3, 1});
  CHECK(est.mean == eq.alpha());
  CHECK(est.std_error == 0.0);
}

TEST_CASE("point mass at the mean matches the closed-form phi") {
  const Equilibrium eq = flagship2();
  const ReserveDist g{eq.alpha(), eq.k()};
  const std::vector<double> mean_point(2, 0.5);
  const double expected = phi(ValueProfile::from_values(mean_point), g);
  const ProfileSampler sampler = [&](RngStream&) {
    return ValueProfile::from_values(mean_point);
  };
  const Estimate est = estimate_psi(sampler, equilibrium_reserve_sampler(g),
                                    SimConfig{400'000, 9, 1});
  CHECK(std::abs(est.mean - expected) <= 3.0 * est.std_error);
  CHECK(est.mean >= eq.alpha() - 3.0 * est.std_error);
  CHECK(expected >= eq.alpha());  // the closed form already clears the floor
}

TEST_CASE("adversarial candidates never undercut the revenue floor") {
  const AuctionInstance instance({0.5, 0.5});
  const Equilibrium eq = compute_equilibrium(instance);
  const ReserveDist g{eq.alpha(), eq.k()};
  const auto candidates = adversarial_candidates(instance);
  REQUIRE(candidates.size() == 5);
  CHECK(candidates[0].name == "mean_point");
  CHECK(candidates[1].name == "two_point_iid");
  CHECK(candidates[2].name == "scaled_beta_iid");
  CHECK(candidates[3].name == "lshape_perturbed");
  CHECK(candidates[4].name == "comonotone");
  for (const Candidate& candidate : candidates) {
    const Estimate est = estimate_psi(candidate.sampler, equilibrium_reserve_sampler(g),
                                      SimConfig{200'000, 13, 1});
    INFO(candidate.name);
    CHECK(est.mean >= eq.alpha() - 3.0 * est.std_error);
  }
}

TEST_CASE("candidate marginals respect the means") {
  const AuctionInstance instance({0.6, 0.5, 0.1});
  for (const Candidate& candidate : adversarial_candidates(instance)) {
    const int trials = 200'000;
    std::vector<double> sums(3, 0.0);
    for (int t = 0; t < trials; ++t) {
      RngStream trial_rng(77, static_cast<std::uint64_t>(t));
      const ValueProfile p = candidate.sampler(trial_rng);
      for (int i = 0; i < 3; ++i) sums[i] += p.values[i];
    }
    for (int i = 0; i < 3; ++i) {
      INFO(candidate.name << " bidder " << i);
      CHECK(std::abs(sums[i] / trials - instance.original_means()[i]) <= 5e-3);
    }
  }
}

TEST_CASE("asymptotic sweep values and monotonicity") {
  std::vector<int> n_list;
  for (int n = 1; n <= 200; ++n) n_list.push_back(n);
  const auto rows = asymptotic_sweep(0.5, n_list);
  REQUIRE(rows.size() == 200);

  CHECK(std::abs(rows[1].alpha_n - 0.317) < 1e-3);
  CHECK(std::abs(rows[9].alpha_n - 0.464) < 1e-3);
  CHECK(rows[0].reserve_mass_above_zero == 1.0);  // no zero-reserve atom for n=1
  CHECK(0.5 - rows[199].alpha_n < 0.05);
  CHECK(rows[199].reserve_mass_above_zero < 0.02);

  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].revenue == rows[i].alpha_n);
    if (i > 0) {
      CHECK(rows[i].alpha_n > rows[i - 1].alpha_n);
      CHECK(rows[i].reserve_mass_above_zero < rows[i - 1].reserve_mass_above_zero);
      CHECK(fosd_compare(HighestValueDist{rows[i - 1].alpha_n},
                         HighestValueDist{rows[i].alpha_n}));
    }
  }

  CHECK_THROWS_AS(asymptotic_sweep(1.5, {2}), std::domain_error);
  CHECK_THROWS_AS(asymptotic_sweep(0.5, {}), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_sweep(0.5, {0}), std::invalid_argument);
}

TEST_CASE("estimate_psi validates its config") {
  const Equilibrium eq = flagship2();
  const WorstCaseDist f(eq);
  const ReserveDist g{eq.alpha(), eq.k()};
  CHECK_THROWS_AS(estimate_psi(worst_case_sampler(f), equilibrium_reserve_sampler(g),
                               SimConfig{0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_psi(worst_case_sampler(f), equilibrium_reserve_sampler(g),
                               SimConfig{10, 1, 0}),
                  std::invalid_argument);
}
