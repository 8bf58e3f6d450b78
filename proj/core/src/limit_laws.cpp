#include "mutclock/limit_laws.h"

#include "mutclock/torus.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mutclock {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr auto k_case_names = std::array{
    "single-stage", "case1", "case2", "case3", "case4", "case5", "case6", "case7", "case8",
    "case9", "case10", "case11", "k3plus-case1", "k3plus-case2", "k3plus-case3",
};

auto log_factorial(double n) -> double { return std::lgamma(n + 1.0); }

// int_0^t f with absolute error well below 1e-8 for the bounded, smooth
// integrands used here.
template <class F>
auto integrate(F f, double t) -> double {
  if (t <= 0.0) { return 0.0; }
  auto error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t, 20, 1e-12, &error);
}

auto case5_exponent(const Case5_integral_law& law, double t) -> double {
  auto gd = unit_ball_volume(law.d);
  auto d1 = law.d + 1.0;
  return integrate([&](double y) { return -std::expm1(-law.c * gd * std::pow(y, d1) / d1); }, t);
}

auto case7_exponent(const Case7_integral_law& law, double t) -> double {
  auto gd = unit_ball_volume(law.d);
  auto d1 = law.d + 1.0;
  auto cp = std::pow(law.c, d1 / (law.d + 2.0));
  return cp * integrate([&](double u) { return -std::expm1(-gd * std::pow(u, d1) / (d1 * cp)); }, t);
}

auto multistage_coefficient(int d, int k) -> double {
  auto km1 = static_cast<double>(k - 1);
  return std::exp(km1 * std::log(unit_ball_volume(d)) + km1 * log_factorial(d) -
                  log_factorial(d * km1 + k));
}

auto empirical_cdf_at(const Empirical_sample& s, double t) -> double {
  if (s.values.empty()) { return 0.0; }
  auto it = std::upper_bound(s.values.begin(), s.values.end(), t);
  return static_cast<double>(it - s.values.begin()) / static_cast<double>(s.values.size());
}

auto check_positive(std::span<const double> c, const char* what) -> void {
  if (c.empty()) { throw std::invalid_argument(std::string{what} + ": at least one rate is required"); }
  for (auto x : c) {
    if (!(x > 0.0) || !std::isfinite(x)) { throw std::invalid_argument(std::string{what} + ": rates must be positive"); }
  }
}

}  // namespace

auto to_string(Case_id id) -> std::string { return k_case_names[static_cast<std::size_t>(id)]; }

auto case_applies_to(Case_id id, int k) -> bool {
  if (id == Case_id::single_stage) { return k == 1; }
  if (id >= Case_id::kk_case1) { return k >= 3; }
  return k == 2;
}

auto parse_case_id(std::string_view text, int k) -> std::optional<Case_id> {
  for (auto i = std::size_t{0}; i != k_case_names.size(); ++i) {
    auto id = static_cast<Case_id>(i);
    if (text == k_case_names[i] && case_applies_to(id, k)) { return id; }
  }
  if (text.starts_with("case")) { text.remove_prefix(4); }
  auto number = 0;
  for (auto ch : text) {
    if (ch < '0' || ch > '9' || number > 100) { return std::nullopt; }
    number = number * 10 + (ch - '0');
  }
  if (text.empty()) { return std::nullopt; }
  if (k == 2 && number >= 1 && number <= 11) {
    return static_cast<Case_id>(static_cast<int>(Case_id::k2_case1) + number - 1);
  }
  if (k >= 3 && number >= 1 && number <= 3) {
    return static_cast<Case_id>(static_cast<int>(Case_id::kk_case1) + number - 1);
  }
  return std::nullopt;
}

auto Limit_law::name() const -> std::string {
  return std::visit(
      Overloaded{
          [](const Exponential_law& l) { return "exponential(" + std::to_string(l.rate) + ")"; },
          [](const Hypoexponential_law& l) {
            auto s = std::string{"hypoexponential("};
            for (auto i = std::size_t{0}; i != l.rates.size(); ++i) {
              s += (i ? "," : "") + (std::isfinite(l.rates[i]) ? std::to_string(l.rates[i]) : std::string{"inf"});
            }
            return s + ")";
          },
          [](const Gamma_law& l) { return "gamma(" + std::to_string(l.shape) + "," + std::to_string(l.rate) + ")"; },
          [](const Stretched_exp_law& l) {
            return "stretched-exp(" + std::to_string(l.coefficient) + "," + std::to_string(l.exponent) + ")";
          },
          [](const Case5_integral_law& l) { return "case5-integral(c=" + std::to_string(l.c) + ")"; },
          [](const Case7_integral_law& l) { return "case7-integral(c=" + std::to_string(l.c) + ")"; },
          [](const Multistage_small_regions_law& l) { return "multistage-small-regions(k=" + std::to_string(l.k) + ")"; },
          [](const Z_empirical_law& l) {
            return "z-empirical(d=" + std::to_string(l.d) + ",k=" + std::to_string(l.c.size()) +
                   ",n=" + std::to_string(l.sample ? l.sample->n() : 0) + ")";
          },
      },
      params);
}

auto survival(const Limit_law& law, double t) -> double { return 1.0 - cdf(law, t); }

auto cdf(const Limit_law& law, double t) -> double {
  if (!(t > 0.0)) { return 0.0; }
  return std::visit(
      Overloaded{
          [t](const Exponential_law& l) { return -std::expm1(-l.rate * t); },
          [t](const Hypoexponential_law& l) { return hypoexp_cdf(l.rates, t); },
          [t](const Gamma_law& l) { return boost::math::gamma_p(l.shape, l.rate * t); },
          [t](const Stretched_exp_law& l) { return -std::expm1(-l.coefficient * std::pow(t, l.exponent)); },
          [t](const Case5_integral_law& l) { return -std::expm1(-case5_exponent(l, t)); },
          [t](const Case7_integral_law& l) { return -std::expm1(-case7_exponent(l, t)); },
          [t](const Multistage_small_regions_law& l) {
            auto exponent = static_cast<double>(l.d * (l.k - 1) + l.k);
            return -std::expm1(-multistage_coefficient(l.d, l.k) * std::pow(t, exponent));
          },
          [t](const Z_empirical_law& l) { return l.sample ? empirical_cdf_at(*l.sample, t) : 0.0; },
      },
      law.params);
}

auto law_mean(const Limit_law& law) -> double {
  if (const auto* z = std::get_if<Z_empirical_law>(&law.params)) {
    if (!z->sample || z->sample->values.empty()) { return 0.0; }
    const auto& v = z->sample->values;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  }
  if (const auto* e = std::get_if<Exponential_law>(&law.params)) { return 1.0 / e->rate; }
  if (const auto* g = std::get_if<Gamma_law>(&law.params)) { return g->shape / g->rate; }
  if (const auto* h = std::get_if<Hypoexponential_law>(&law.params)) {
    auto m = 0.0;
    for (auto r : h->rates) { m += std::isfinite(r) ? 1.0 / r : 0.0; }
    return m;
  }
  // Integrate the survival function up to where it is negligible.
  auto upper = 1.0;
  while (survival(law, upper) > 1e-14 && upper < 1e12) { upper *= 2.0; }
  auto error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double t) { return survival(law, t); }, 0.0, upper, 25, 1e-10, &error);
}

auto q_fraction(double t, double mu1, double alpha, int d) -> double {
  if (t < 0.0) { throw std::invalid_argument("q_fraction: t must be >= 0"); }
  auto d1 = d + 1.0;
  return -std::expm1(-unit_ball_volume(d) * mu1 * std::pow(alpha, d) * std::pow(t, d1) / d1);
}

auto mean_first_stage_volume(double t, const Model_params& params) -> double {
  params.validate();
  auto window = params.side() / (2.0 * params.alpha);
  if (t < 0.0 || t > window) {
    throw std::domain_error("mean_first_stage_volume: t outside [0, N^{1/d}/(2 alpha)] = [0, " +
                            std::to_string(window) + "]");
  }
  return params.volume * q_fraction(t, params.mu[0], params.alpha, params.d);
}

auto stage_volume_approx(double t, const Model_params& params, int k) -> double {
  if (k < 0 || k > params.k()) { throw std::invalid_argument("stage_volume_approx: k outside [0, params.k()]"); }
  if (t < 0.0) { throw std::invalid_argument("stage_volume_approx: t must be >= 0"); }
  if (k == 0) { return params.volume; }
  if (t == 0.0) { return 0.0; }
  auto d = static_cast<double>(params.d);
  auto kd = static_cast<double>(k);
  auto log_v = kd * std::log(unit_ball_volume(params.d)) + kd * log_factorial(d) - log_factorial(kd * (d + 1.0)) +
               std::log(params.volume) + kd * d * std::log(params.alpha) + kd * (d + 1.0) * std::log(t);
  for (auto i = 0; i != k; ++i) { log_v += std::log(params.mu[static_cast<std::size_t>(i)]); }
  return std::exp(log_v);
}

auto stage_occupancy_approx(double t, const Model_params& params, int k) -> double {
  return stage_volume_approx(t, params, k) / params.volume;
}

auto small_regions_timescale(const Model_params& params) -> double {
  params.validate();
  auto k = static_cast<double>(params.k());
  auto d = static_cast<double>(params.d);
  auto log_base = std::log(params.volume) + (k - 1.0) * d * std::log(params.alpha);
  for (auto m : params.mu) { log_base += std::log(m); }
  return std::exp(-log_base / ((k - 1.0) * d + k));
}

auto fixation_time_bound(int d, double volume, double alpha) -> double {
  if (d < 1 || !(volume > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("fixation_time_bound: arguments must be positive");
  }
  return Torus::from_volume(d, volume).diameter() / alpha;
}

auto z_small_t_constant(int d, std::span<const double> c) -> double {
  check_positive(c, "z_small_t_constant");
  auto km1 = static_cast<double>(c.size() - 1);
  auto log_c = 0.0;
  for (auto x : c) { log_c += std::log(x); }
  return std::exp(km1 * log_factorial(d) + km1 * std::log(unit_ball_volume(d)) + log_c -
                  log_factorial(km1 * d + static_cast<double>(c.size())));
}

auto z_small_t_correction(int d, std::span<const double> c, double t) -> double {
  check_positive(c, "z_small_t_correction");
  auto d1 = d + 1.0;
  auto gd = unit_ball_volume(d);
  auto exponent = c[0] * t;
  for (auto j = std::size_t{1}; j != c.size(); ++j) { exponent += c[j] * gd * std::pow(t, d1) / d1; }
  return std::exp(-exponent);
}

auto z_bounds(int d, std::span<const double> c, double t) -> Probability_bounds {
  if (!(t >= 0.0) || t >= 0.5) { throw std::domain_error("z_bounds: requires 0 <= t < 1/2"); }
  auto k = static_cast<double>(c.size());
  auto upper = z_small_t_constant(d, c) * std::pow(t, (k - 1.0) * d + k);
  return {z_small_t_correction(d, c, t) * upper, upper};
}

auto z_dominance_cdf_bounds(int d, std::span<const double> c, double t) -> Probability_bounds {
  check_positive(c, "z_dominance_cdf_bounds");
  auto shift = static_cast<double>(c.size() - 1) * std::sqrt(static_cast<double>(d)) / 2.0;
  return {hypoexp_cdf(c, t - shift), hypoexp_cdf(c, t)};
}

auto z_rates(const Model_params& params) -> std::vector<double> {
  auto factor = std::pow(params.volume, (params.d + 1.0) / params.d) / params.alpha;
  auto c = std::vector<double>{};
  for (auto m : params.mu) { c.push_back(m * factor); }
  return c;
}

auto law_for_case(Case_id id, const Model_params& params, const Z_law_options& z_options) -> Limit_law {
  params.validate();
  auto k = params.k();
  if (!case_applies_to(id, k)) {
    throw std::invalid_argument(to_string(id) + " does not apply to k = " + std::to_string(k));
  }
  auto n = params.volume;
  auto d = params.d;
  auto a_d = std::pow(params.alpha, d);
  const auto& mu = params.mu;

  auto z_law = [&] {
    auto c = z_rates(params);
    auto zp = z_params(d, c);
    auto horizon = static_cast<double>(k - 1) * std::sqrt(static_cast<double>(d)) / 2.0;
    for (auto x : c) { horizon += 1.0 / x; }
    auto sample = replicate(zp, z_options.n, z_options.seed, z_options.t_max_multiplier * horizon,
                            k_default_candidate_cap, {}, z_options.workers);
    auto band = std::sqrt(std::log(2.0 / z_options.confidence) / (2.0 * static_cast<double>(sample.n())));
    return Limit_law{Z_empirical_law{d, c, std::make_shared<const Empirical_sample>(std::move(sample)), band},
                     params.alpha / params.side()};
  };

  switch (id) {
    case Case_id::single_stage:
      return {Exponential_law{1.0}, n * mu[0]};
    case Case_id::k2_case1:
    case Case_id::k2_case4:
    case Case_id::k2_case9:
      return {Exponential_law{1.0}, n * mu[0]};
    case Case_id::k2_case2:
    case Case_id::k2_case8:
    case Case_id::k2_case10:
      return {Exponential_law{1.0}, n * mu[1]};
    case Case_id::k2_case3:
      return {Hypoexponential_law{{1.0, mu[1] / mu[0]}}, n * mu[0]};
    case Case_id::k2_case5:
      return {Case5_integral_law{mu[1] * a_d / std::pow(n * mu[0], d + 1.0), d}, n * mu[0]};
    case Case_id::k2_case6: {
      auto d1 = d + 1.0;
      return {Stretched_exp_law{unit_ball_volume(d) / (d1 * (d1 + 1.0)), d1 + 1.0},
              1.0 / small_regions_timescale(params)};
    }
    case Case_id::k2_case7:
      return {Case7_integral_law{n * mu[1] / std::pow(mu[0] * a_d, 1.0 / (d + 1.0)), d},
              1.0 / small_regions_timescale(params)};
    case Case_id::k2_case11:
    case Case_id::kk_case3:
      return z_law();
    case Case_id::kk_case1: {
      // Waiting times W_i ~ Exponential(mu_i / mu_1) on the N mu_1 scale.
      auto equal = std::ranges::all_of(mu, [&](double m) { return m == mu[0]; });
      if (equal) { return {Gamma_law{static_cast<double>(k), 1.0}, n * mu[0]}; }
      auto rates = std::vector<double>{};
      for (auto m : mu) { rates.push_back(m / mu[0]); }
      return {Hypoexponential_law{rates}, n * mu[0]};
    }
    case Case_id::kk_case2:
      return {Multistage_small_regions_law{d, k}, 1.0 / small_regions_timescale(params)};
  }
  throw std::logic_error("law_for_case: unhandled case");
}

}  // namespace mutclock
