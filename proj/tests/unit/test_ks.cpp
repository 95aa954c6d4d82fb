#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mstkit/error.hpp"
#include "mstkit/ks_test.hpp"
#include "oracles.hpp"

using namespace mstkit;

TEST_CASE("Kolmogorov survival function at tabulated points") {
  // Critical values of the limiting distribution.
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.26999967).epsilon(1e-6));
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(10.0) < 1e-80);
}

TEST_CASE("survival function is monotone") {
  double prev = 1.0;
  for (double l = 0.0; l < 3.0; l += 0.01) {
    const double q = kolmogorov_survival(l);
    CHECK(q <= prev + 1e-15);
    prev = q;
  }
}

TEST_CASE("one-sample statistic matches a direct computation") {
  const std::vector<double> xs{0.1, 0.35, 0.4, 0.8, 0.95};
  auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const auto r = ks_test(xs, cdf);
  CHECK(r.statistic == doctest::Approx(oracle::ks_statistic(xs, cdf)));
  CHECK(r.statistic == doctest::Approx(0.2));  // reached at x = 0.4 and x = 0.8
}

TEST_CASE("two-sample extremes") {
  const std::vector<double> a{1, 2, 3, 4}, b{10, 11, 12};
  const auto disjoint = ks_test(a, b);
  CHECK(disjoint.statistic == 1.0);
  const auto same = ks_test(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);
  // Ties across samples are stepped together.
  const auto tied = ks_test(std::vector<double>{1, 2, 2, 3}, std::vector<double>{2, 2, 2, 2});
  CHECK(tied.statistic == doctest::Approx(0.25));
}

TEST_CASE("empty samples are rejected") {
  CHECK_THROWS_AS(ks_test(std::vector<double>{}, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(ks_test(std::vector<double>{}, [](double) { return 0.0; }), Error);
}
