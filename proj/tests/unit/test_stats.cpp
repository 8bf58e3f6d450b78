#include "mutclock/stats.h"

#include "mutclock/random.h"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace mutclock;

namespace {

auto exp_cdf(double t) -> double { return t <= 0.0 ? 0.0 : -std::expm1(-t); }

auto exponential_sample(Rng& rng, std::size_t n) -> std::vector<double> {
  auto v = std::vector<double>(n);
  for (auto& x : v) { x = exponential(rng, 1.0); }
  std::ranges::sort(v);
  return v;
}

}  // namespace

TEST_CASE("empirical CDF") {
  auto v = std::vector{1.0, 2.0, 3.0};
  CHECK(ecdf(v, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(ecdf(v, 0.5) == 0.0);
  CHECK(ecdf(v, 3.0) == 1.0);
  CHECK(ecdf(v, 1.999) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(ecdf(std::vector<double>{}, 1.0), std::invalid_argument);

  auto rng = make_rng(1);
  auto s = exponential_sample(rng, 500);
  auto previous = 0.0;
  for (auto i = 0; i != 1000; ++i) {
    auto f = ecdf(s, 0.01 * i);
    CHECK(f >= previous);
    CHECK(f <= 1.0);
    previous = f;
  }
}

TEST_CASE("KS statistic") {
  // A sample at the law's quantiles i / (n + 1).
  auto n = 999;
  auto q = std::vector<double>{};
  for (auto i = 1; i <= n; ++i) { q.push_back(-std::log1p(-static_cast<double>(i) / (n + 1))); }
  CHECK(ks_statistic(q, exp_cdf) <= 1.0 / (n + 1) + 1e-12);

  auto median = std::vector{std::log(2.0)};
  CHECK(ks_statistic(median, exp_cdf) == doctest::Approx(0.5));
  CHECK_THROWS(ks_statistic(std::vector<double>{}, exp_cdf));
}

TEST_CASE("KS statistic is invariant under monotone reparameterization") {
  auto rng = make_rng(2);
  auto s = exponential_sample(rng, 2000);
  auto base = ks_statistic(s, exp_cdf);
  auto shifted = s;
  for (auto& x : shifted) { x = 3.0 * x + 5.0; }
  auto affine = ks_statistic(shifted, [](double y) { return exp_cdf((y - 5.0) / 3.0); });
  CHECK(affine == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("KS against a limit law") {
  auto rng = make_rng(3);
  auto s = exponential_sample(rng, 3000);
  auto law = Limit_law{Exponential_law{1.0}, 1.0};
  CHECK(ks_statistic(s, law) == doctest::Approx(ks_statistic(s, exp_cdf)));
  auto sample = std::make_shared<Empirical_sample>();
  sample->values = s;
  auto empirical = Limit_law{Z_empirical_law{1, {1.0}, sample, 0.0}, 1.0};
  CHECK(ks_statistic(s, empirical) == 0.0);
}

TEST_CASE("DKW band") {
  CHECK(dkw_band(10'000, 0.01) == doctest::Approx(0.016276).epsilon(1e-4));
  CHECK(dkw_band(5000, 0.01) == doctest::Approx(0.023018).epsilon(1e-4));
  CHECK(dkw_band(400, 0.05) == doctest::Approx(2.0 * dkw_band(1600, 0.05)));
  CHECK_THROWS(dkw_band(0, 0.01));
  CHECK_THROWS(dkw_band(10, 0.0));
  CHECK_THROWS(dkw_band(10, 1.0));
}

TEST_CASE("DKW band coverage") {
  auto rng = make_rng(4);
  auto band = dkw_band(1000, 0.05);
  auto exceed = 0;
  for (auto rep = 0; rep != 200; ++rep) {
    if (ks_statistic(exponential_sample(rng, 1000), exp_cdf) > band) { ++exceed; }
  }
  CHECK(exceed <= 20);
}

TEST_CASE("two-sample KS") {
  auto a = std::vector{1.0, 2.0, 3.0};
  CHECK(two_sample_ks(a, a) == 0.0);
  CHECK(two_sample_ks(a, std::vector{10.0, 11.0}) == 1.0);
  CHECK(two_sample_ks(std::vector{1.0}, std::vector{2.0}) == 1.0);
  CHECK(two_sample_ks(std::vector{1.0, 3.0}, std::vector{2.0}) == doctest::Approx(0.5));
  // Ties across samples are handled at the same abscissa.
  CHECK(two_sample_ks(std::vector{1.0, 2.0}, std::vector{1.0, 2.0, 2.0}) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS(two_sample_ks(std::vector<double>{}, a));
}

TEST_CASE("sample scaling") {
  auto s = Empirical_sample{{1.0, 2.0}, 1, 9, 1.0};
  auto t = s.scaled(3.0);
  CHECK(t.values == std::vector{3.0, 6.0});
  CHECK(t.scale_applied == 3.0);
  CHECK(t.timeouts == 1);
  CHECK(s.timeout_fraction() == doctest::Approx(1.0 / 3.0));
}
