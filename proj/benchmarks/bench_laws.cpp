#include "mutclock/limit_laws.h"

#include <benchmark/benchmark.h>

namespace {

using namespace mutclock;

void bm_hypoexp_cdf(benchmark::State& state) {
  auto rates = std::vector<double>{};
  for (auto i = 0; i < state.range(0); ++i) { rates.push_back(1.0 + 0.5 * i); }
  auto t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hypoexp_cdf(rates, t));
    t = t > 10.0 ? 0.0 : t + 0.01;
  }
}
BENCHMARK(bm_hypoexp_cdf)->Arg(2)->Arg(4)->Arg(8);

// Nearly equal rates take the matrix-exponential path.
void bm_hypoexp_cdf_close_rates(benchmark::State& state) {
  auto rates = std::vector<double>{1.0, 1.0 + 1e-9, 1.0 + 2e-9};
  for (auto _ : state) { benchmark::DoNotOptimize(hypoexp_cdf(rates, 2.5)); }
}
BENCHMARK(bm_hypoexp_cdf_close_rates);

void bm_law_cdf(benchmark::State& state, Limit_law law) {
  auto t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdf(law, t));
    t = t > 5.0 ? 0.0 : t + 0.01;
  }
}
BENCHMARK_CAPTURE(bm_law_cdf, gamma, Limit_law{Gamma_law{.shape = 3.0, .rate = 1.0}});
BENCHMARK_CAPTURE(bm_law_cdf, stretched, Limit_law{Stretched_exp_law{.coefficient = 0.5, .exponent = 3.0}});
BENCHMARK_CAPTURE(bm_law_cdf, case5, Limit_law{Case5_integral_law{.c = 1.0, .d = 2}});
BENCHMARK_CAPTURE(bm_law_cdf, case7, Limit_law{Case7_integral_law{.c = 1.0, .d = 2}});

}  // namespace
