#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "rspa/lambert.hpp"

using rspa::lambert_w_minus1;

TEST_CASE("branch point maps to -1") {
  CHECK(lambert_w_minus1(-std::exp(-1.0)) == -1.0);
}

TEST_CASE("known point w = -2") {
  const double x = -2.0 * std::exp(-2.0);
  CHECK(std::abs(lambert_w_minus1(x) - (-2.0)) < 1e-12);
}

TEST_CASE("back-substitution residual at x = -0.1") {
  const double w = lambert_w_minus1(-0.1);
  CHECK(w <= -1.0);
  CHECK(std::abs(w * std::exp(w) - (-0.1)) <= 1e-12);
  CHECK(std::abs(w - oracle::lambert_lower_root(-0.1)) < 1e-12);
}

TEST_CASE("residual stays below 1e-12 across the domain") {
  for (int i = 1; i <= 400; ++i) {
    const double x = -std::exp(-1.0) * i / 401.0;
    const double w = lambert_w_minus1(x);
    CHECK(w <= -1.0);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12);
  }
  // deep tail
  for (double x : {-1e-6, -1e-12, -1e-30, -1e-100}) {
    const double w = lambert_w_minus1(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(lambert_w_minus1(0.0), std::domain_error);
  CHECK_THROWS_AS(lambert_w_minus1(0.5), std::domain_error);
  CHECK_THROWS_AS(lambert_w_minus1(-0.5), std::domain_error);
}
