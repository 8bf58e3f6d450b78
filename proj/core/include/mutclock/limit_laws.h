#pragma once

#include "mutclock/mutation_sim.h"
#include "mutclock/sample.h"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mutclock {

// Asymptotic regimes.  k2_* apply to sigma_2, kk_* to sigma_k for k >= 3 and
// single_stage to sigma_1, whose law Exponential(N mu_1) is exact.
enum class Case_id {
  single_stage,
  k2_case1, k2_case2, k2_case3, k2_case4, k2_case5, k2_case6,
  k2_case7, k2_case8, k2_case9, k2_case10, k2_case11,
  kk_case1, kk_case2, kk_case3,
};

auto to_string(Case_id id) -> std::string;
// Accepts the to_string form, "caseN" or "N" (interpreted for the given k) and
// "single-stage".  Returns nullopt for anything else or for an id that does
// not exist at that k.
auto parse_case_id(std::string_view text, int k) -> std::optional<Case_id>;
auto case_applies_to(Case_id id, int k) -> bool;

// ---- Unit-scale limit distributions -------------------------------------

struct Exponential_law {
  double rate = 1.0;
};

// Sum of independent exponentials; infinite rates are zero summands.
struct Hypoexponential_law {
  std::vector<double> rates;
};

struct Gamma_law {
  double shape = 1.0;
  double rate = 1.0;
};

// Survival exp(-coefficient * t^exponent).
struct Stretched_exp_law {
  double coefficient = 1.0;
  double exponent = 1.0;
};

// Survival exp(-int_0^t (1 - exp(-c gamma_d y^{d+1} / (d+1))) dy).
struct Case5_integral_law {
  double c = 1.0;
  int d = 1;
};

// Survival exp(-c' int_0^t (1 - exp(-gamma_d u^{d+1} / ((d+1) c'))) du) with
// c' = c^{(d+1)/(d+2)}.
struct Case7_integral_law {
  double c = 1.0;
  int d = 1;
};

// Survival exp(-gamma_d^{k-1} (d!)^{k-1} t^{d(k-1)+k} / (d(k-1)+k)!).
struct Multistage_small_regions_law {
  int d = 1;
  int k = 3;
};

// Empirical law of Z_{d,k}(c), built from simulated draws.  `band` is the DKW
// half-width of the sample at the confidence it was built with.
struct Z_empirical_law {
  int d = 1;
  std::vector<double> c;
  std::shared_ptr<const Empirical_sample> sample;
  double band = 0.0;
};

using Law_params = std::variant<Exponential_law, Hypoexponential_law, Gamma_law, Stretched_exp_law,
                                Case5_integral_law, Case7_integral_law, Multistage_small_regions_law,
                                Z_empirical_law>;

// A limit law together with the factor m such that m * sigma_k converges to
// it.
struct Limit_law {
  Law_params params;
  double time_scale = 1.0;

  auto name() const -> std::string;
};

auto cdf(const Limit_law& law, double t) -> double;
auto survival(const Limit_law& law, double t) -> double;
// Mean of the unit-scale law (numerical for the integral laws).
auto law_mean(const Limit_law& law) -> double;

auto hypoexp_cdf(std::span<const double> rates, double t) -> double;

// ---- Closed-form quantities -----------------------------------------------

// Probability that a fixed site has type >= 1 at time t, for alpha t below
// half the torus side: 1 - exp(-gamma_d mu_1 alpha^d t^{d+1} / (d+1)).
auto q_fraction(double t, double mu1, double alpha, int d) -> double;

// Exact E[Y_1(t)] = N q(t).  Throws std::domain_error outside
// 0 <= t <= N^{1/d} / (2 alpha), where the ball volume formula stops holding.
auto mean_first_stage_volume(double t, const Model_params& params) -> double;

// Overlap-free volume approximation of type >= k sites (an upper bound on
// E[Y_k(t)]): gamma_d^k (d!)^k / (k(d+1))! * prod(mu_1..mu_k) * N alpha^{kd}
// t^{k(d+1)}.  Stage 0 gives N.  Uses the first k rates of `params`.
auto stage_volume_approx(double t, const Model_params& params, int k) -> double;
// Same divided by N; an upper bound on P(0 in psi_k(t)).
auto stage_occupancy_approx(double t, const Model_params& params, int k) -> double;

// Time scale of the many-small-regions regime,
// (N alpha^{(k-1)d} prod mu_i)^{-1/((k-1)d+k)} with k = params.k().
auto small_regions_timescale(const Model_params& params) -> double;

// sqrt(d) N^{1/d} / (2 alpha): the longest a mutation can take to cover the torus.
auto fixation_time_bound(int d, double volume, double alpha) -> double;

// lim_{t->0} t^{-((k-1)d+k)} P(Z_{d,k}(c) <= t) = (d!)^{k-1} gamma_d^{k-1} prod(c) / ((k-1)d+k)!.
auto z_small_t_constant(int d, std::span<const double> c) -> double;

// exp(-c_1 t) prod_{j>=2} exp(-c_j gamma_d t^{d+1} / (d+1)).
auto z_small_t_correction(int d, std::span<const double> c, double t) -> double;

struct Probability_bounds {
  double lower;
  double upper;
};

// Markov upper bound and first-mutations-only lower bound on P(Z <= t).
// Throws std::domain_error for t >= 1/2, where the lower bound is not valid.
auto z_bounds(int d, std::span<const double> c, double t) -> Probability_bounds;

// Stochastic sandwich sum(W_i) <= Z <= (k-1) sqrt(d) / 2 + sum(W_i), W_i ~
// Exponential(c_i), expressed as bounds on the CDF of Z at t.
auto z_dominance_cdf_bounds(int d, std::span<const double> c, double t) -> Probability_bounds;

// ---- Case -> law -----------------------------------------------------------

struct Z_law_options {
  std::size_t n = 3000;
  std::uint64_t seed = 0x2545f4914f6cdd1dULL;
  double confidence = 0.01;
  double t_max_multiplier = 20.0;
  int workers = 1;
};

// Rates of Z_{d,k} matched to `params`: mu_i N^{(d+1)/d} / alpha.
auto z_rates(const Model_params& params) -> std::vector<double>;

// Throws std::invalid_argument if the case does not exist for params.k().
auto law_for_case(Case_id id, const Model_params& params, const Z_law_options& z_options = {}) -> Limit_law;

}  // namespace mutclock
