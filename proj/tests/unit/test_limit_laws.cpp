#include "mutclock/limit_laws.h"

#include "oracles.h"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace mutclock;

namespace {

auto params(int d, double n, double alpha, std::vector<double> mu) -> Model_params {
  return Model_params{d, n, alpha, std::move(mu)};
}

auto all_laws(const Model_params& p2, const Model_params& p3) -> std::vector<Limit_law> {
  auto laws = std::vector<Limit_law>{};
  for (auto i = static_cast<int>(Case_id::k2_case1); i <= static_cast<int>(Case_id::k2_case11); ++i) {
    laws.push_back(law_for_case(static_cast<Case_id>(i), p2, Z_law_options{500, 1, 0.01, 20.0, 1}));
  }
  for (auto i = static_cast<int>(Case_id::kk_case1); i <= static_cast<int>(Case_id::kk_case3); ++i) {
    laws.push_back(law_for_case(static_cast<Case_id>(i), p3, Z_law_options{500, 1, 0.01, 20.0, 1}));
  }
  return laws;
}

}  // namespace

TEST_CASE("hypoexponential CDF") {
  auto inf = std::numeric_limits<double>::infinity();
  for (auto t : {0.1, 1.0, 3.0}) {
    CHECK(hypoexp_cdf(std::vector{1.0, inf}, t) == doctest::Approx(-std::expm1(-t)).epsilon(1e-14));
  }
  CHECK(hypoexp_cdf(std::vector{1.0, 2.0}, std::log(2.0)) == doctest::Approx(0.25).epsilon(1e-12));
  for (auto t : {0.01, 0.5, 2.0, 10.0}) {
    auto erlang = 1.0 - std::exp(-t) * (1.0 + t);
    CHECK(std::abs(hypoexp_cdf(std::vector{1.0, 1.0}, t) - erlang) < 1e-10);
    CHECK(std::abs(hypoexp_cdf(std::vector{1.0, 1.0 + 1e-9}, t) - erlang) < 1e-6);
    // Gamma(2, lambda) with lambda = 3.
    auto g = 1.0 - std::exp(-3.0 * t) * (1.0 + 3.0 * t);
    CHECK(std::abs(hypoexp_cdf(std::vector{3.0, 3.0}, t) - g) < 1e-10);
  }
  CHECK(hypoexp_cdf(std::vector{2.0, 5.0}, 0.0) == 0.0);
  CHECK(hypoexp_cdf(std::vector{2.0, 5.0}, -1.0) == 0.0);
  CHECK_THROWS_AS(hypoexp_cdf(std::vector{1.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("hypoexponential CDF against convolution") {
  for (auto t : {0.05, 0.7, 2.5, 8.0}) {
    CHECK(std::abs(hypoexp_cdf(std::vector{0.5, 2.0}, t) - oracle::two_rate_cdf(0.5, 2.0, t)) < 1e-9);
    CHECK(std::abs(hypoexp_cdf(std::vector{1.0, 1.3, 4.0}, t) - oracle::three_rate_cdf(1.0, 1.3, 4.0, t)) < 1e-9);
    // Nearly equal rates go through the matrix exponential.
    CHECK(std::abs(hypoexp_cdf(std::vector{1.0, 1.0 + 1e-8, 4.0}, t) - oracle::three_rate_cdf(1.0, 1.0, 4.0, t)) <
          1e-7);
  }
}

TEST_CASE("first-stage covered fraction and mean volume") {
  CHECK(q_fraction(0.0, 1.0, 1.0, 1) == 0.0);
  CHECK(q_fraction(1.0, std::log(2.0), 1.0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q_fraction(1.0, 1.0, 1.0, 1) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

  CHECK(mean_first_stage_volume(0.0, params(1, 100.0, 1.0, {1.0})) == 0.0);
  CHECK(mean_first_stage_volume(1.0, params(1, 100.0, 1.0, {std::log(2.0)})) == doctest::Approx(50.0));
  CHECK(mean_first_stage_volume(1.0, params(2, 1e4, 1.0, {1.0})) ==
        doctest::Approx(1e4 * (1.0 - std::exp(-std::numbers::pi / 3.0))));
  CHECK_THROWS_AS(mean_first_stage_volume(51.0, params(1, 100.0, 1.0, {1.0})), std::domain_error);
  CHECK_THROWS_AS(mean_first_stage_volume(-1.0, params(1, 100.0, 1.0, {1.0})), std::domain_error);
}

TEST_CASE("stage volume approximation") {
  CHECK(stage_volume_approx(3.0, params(2, 77.0, 2.0, {1.0}), 0) == 77.0);
  CHECK(stage_volume_approx(1.0, params(1, 1.0, 1.0, {1.0}), 1) == doctest::Approx(1.0));
  CHECK(stage_volume_approx(1.0, params(1, 1.0, 1.0, {1.0, 1.0}), 2) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS(stage_volume_approx(1.0, params(1, 1.0, 1.0, {1.0}), 2));
}

TEST_CASE("stage volume approximation matches the integral recursion") {
  auto mu = std::vector{0.7, 1.3, 0.4, 2.1};
  for (auto d = 1; d <= 3; ++d) {
    for (auto k = 1; k <= 4; ++k) {
      auto p = params(d, 50.0, 1.7, std::vector<double>(mu.begin(), mu.begin() + k));
      for (auto t : {0.5, 1.0, 2.0}) {
        auto closed = stage_volume_approx(t, p, k);
        auto nested = oracle::v_recursive(k, t, d, p.volume, p.alpha, p.mu);
        CHECK(std::abs(closed - nested) <= 1e-6 * std::abs(nested));
      }
    }
  }
}

TEST_CASE("time scales and bounds") {
  CHECK(small_regions_timescale(params(1, 1.0, 1.0, {1.0, 1.0})) == doctest::Approx(1.0));
  // (1e3 * 1e-6 * 10)^{-1/3} = (1e-2)^{-1/3} = 10^{2/3}.
  CHECK(small_regions_timescale(params(1, 1e3, 10.0, {1e-3, 1e-3})) ==
        doctest::Approx(std::pow(10.0, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(fixation_time_bound(1, 100.0, 5.0) == doctest::Approx(10.0));
  CHECK(fixation_time_bound(4, 16.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("unit-scale law values") {
  auto exp1 = Limit_law{Exponential_law{1.0}, 1.0};
  CHECK(cdf(exp1, 0.0) == 0.0);
  CHECK(cdf(exp1, 1.0) == doctest::Approx(0.632120558829).epsilon(1e-12));

  auto p = params(1, 1e6, 1.0, {1e-2, 1e-2});
  auto case6 = law_for_case(Case_id::k2_case6, p);
  CHECK(survival(case6, std::cbrt(3.0 * std::log(2.0))) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(law_mean(case6) == doctest::Approx(std::cbrt(3.0) * std::tgamma(4.0 / 3.0)).epsilon(1e-8));

  // int_0^1 (1 - exp(-y^2)) dy = 1 - (sqrt(pi) / 2) erf(1).
  auto case5 = Limit_law{Case5_integral_law{1.0, 1}, 1.0};
  auto integral = 1.0 - 0.5 * std::sqrt(std::numbers::pi) * std::erf(1.0);
  CHECK(survival(case5, 1.0) == doctest::Approx(std::exp(-integral)).epsilon(1e-10));
  CHECK(survival(Limit_law{Case5_integral_law{1e-12, 1}, 1.0}, 2.0) == doctest::Approx(1.0).epsilon(1e-9));

  auto gamma3 = Limit_law{Gamma_law{3.0, 1.0}, 1.0};
  for (auto t : {0.5, 2.0, 6.0}) { CHECK(cdf(gamma3, t) == doctest::Approx(oracle::erlang_cdf(3, t)).epsilon(1e-12)); }

  // Many-small-regions law for d = 1, k = 3: exponent 2^2 t^5 / 5!.
  auto kk2 = Limit_law{Multistage_small_regions_law{1, 3}, 1.0};
  CHECK(survival(kk2, 1.3) == doctest::Approx(std::exp(-4.0 * std::pow(1.3, 5.0) / 120.0)).epsilon(1e-12));
}

TEST_CASE("case 7 approaches case 6 as its constant grows") {
  auto case6 = Limit_law{Stretched_exp_law{2.0 / 6.0, 3.0}, 1.0};
  auto case7 = Limit_law{Case7_integral_law{1e6, 1}, 1.0};
  for (auto t : {0.25, 0.5, 1.0, 1.5, 2.0}) { CHECK(std::abs(cdf(case7, t) - cdf(case6, t)) < 1e-3); }
}

TEST_CASE("every law is a CDF") {
  auto laws = all_laws(params(1, 1e4, 1.0, {1e-3, 2e-3}), params(2, 1e4, 1.0, {1e-3, 1e-3, 1e-3}));
  for (const auto& law : laws) {
    CAPTURE(law.name());
    CHECK(law.time_scale > 0.0);
    CHECK(cdf(law, 0.0) == 0.0);
    auto previous = 0.0;
    for (auto i = 1; i <= 1000; ++i) {
      auto f = cdf(law, 0.02 * i);
      CHECK(f >= previous - 1e-12);
      CHECK(f <= 1.0);
      previous = f;
    }
    CHECK(cdf(law, 1e4) > 0.999);
  }
}

TEST_CASE("case to law mapping") {
  auto p = params(2, 1e4, 3.0, {1e-3, 2e-3});
  auto n = p.volume;
  CHECK(law_for_case(Case_id::k2_case1, p).time_scale == doctest::Approx(n * 1e-3));
  CHECK(law_for_case(Case_id::k2_case4, p).time_scale == doctest::Approx(n * 1e-3));
  CHECK(law_for_case(Case_id::k2_case9, p).time_scale == doctest::Approx(n * 1e-3));
  CHECK(law_for_case(Case_id::k2_case2, p).time_scale == doctest::Approx(n * 2e-3));
  CHECK(law_for_case(Case_id::k2_case8, p).time_scale == doctest::Approx(n * 2e-3));
  CHECK(law_for_case(Case_id::k2_case10, p).time_scale == doctest::Approx(n * 2e-3));
  auto beta_inv = std::pow(n * 1e-3 * 2e-3 * 9.0, 1.0 / 4.0);
  CHECK(law_for_case(Case_id::k2_case6, p).time_scale == doctest::Approx(beta_inv));
  CHECK(law_for_case(Case_id::k2_case7, p).time_scale == doctest::Approx(beta_inv));
  auto z = law_for_case(Case_id::k2_case11, p, Z_law_options{200, 3, 0.01, 20.0, 1});
  CHECK(z.time_scale == doctest::Approx(3.0 / 100.0));
  const auto& zl = std::get<Z_empirical_law>(z.params);
  CHECK(zl.sample->n() == 200);
  CHECK(zl.c[0] == doctest::Approx(1e-3 * 1e6 / 3.0));

  auto case3 = std::get<Hypoexponential_law>(law_for_case(Case_id::k2_case3, p).params);
  CHECK(case3.rates == std::vector{1.0, 2.0});

  auto p3 = params(1, 1e3, 1.0, {1e-4, 1e-4, 1e-4});
  CHECK(std::holds_alternative<Gamma_law>(law_for_case(Case_id::kk_case1, p3).params));
  CHECK(law_for_case(Case_id::kk_case2, p3).time_scale == doctest::Approx(1.0 / small_regions_timescale(p3)));

  CHECK_THROWS_AS(law_for_case(Case_id::kk_case1, p), std::invalid_argument);
  CHECK_THROWS_AS(law_for_case(Case_id::k2_case6, p3), std::invalid_argument);
  CHECK_THROWS_AS(law_for_case(Case_id::k2_case1, params(1, 1.0, 1.0, {1.0})), std::invalid_argument);
}

TEST_CASE("case names") {
  CHECK(parse_case_id("case6", 2) == Case_id::k2_case6);
  CHECK(parse_case_id("6", 2) == Case_id::k2_case6);
  CHECK(parse_case_id("2", 3) == Case_id::kk_case2);
  CHECK(parse_case_id("k3plus-case3", 4) == Case_id::kk_case3);
  CHECK(parse_case_id("single-stage", 1) == Case_id::single_stage);
  CHECK_FALSE(parse_case_id("case12", 2));
  CHECK_FALSE(parse_case_id("case4", 3));
  CHECK_FALSE(parse_case_id("", 2));
  CHECK_FALSE(parse_case_id("casex", 2));
  for (auto i = 0; i <= static_cast<int>(Case_id::kk_case3); ++i) {
    auto id = static_cast<Case_id>(i);
    auto k = id == Case_id::single_stage ? 1 : id >= Case_id::kk_case1 ? 3 : 2;
    CHECK(parse_case_id(to_string(id), k) == id);
  }
}

TEST_CASE("Z small-t bounds") {
  auto c = std::vector{1.0, 1.0};
  CHECK(z_small_t_constant(1, c) == doctest::Approx(1.0 / 3.0));
  // d = 2, k = 3: (2!)^2 pi^2 / 7!.
  CHECK(z_small_t_constant(2, std::vector{1.0, 1.0, 1.0}) ==
        doctest::Approx(4.0 * std::numbers::pi * std::numbers::pi / 5040.0));
  for (auto i = 0; i != 50; ++i) {
    auto t = 0.0099 * i;
    auto b = z_bounds(1, c, t);
    CHECK(b.lower <= b.upper);
  }
  CHECK(z_small_t_correction(1, c, 1e-9) == doctest::Approx(1.0));
  CHECK(z_small_t_correction(1, c, 0.2) == doctest::Approx(std::exp(-0.2 - 0.04)));
  CHECK_THROWS_AS(z_bounds(1, c, 0.5), std::domain_error);

  auto dom = z_dominance_cdf_bounds(1, c, 1.0);
  CHECK(dom.lower == doctest::Approx(hypoexp_cdf(c, 0.5)));
  CHECK(dom.upper == doctest::Approx(hypoexp_cdf(c, 1.0)));
}
