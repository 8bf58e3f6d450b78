#include "mutclock/mutation_sim.h"

#include <benchmark/benchmark.h>

namespace {

using namespace mutclock;

auto index_of(std::int64_t arg) -> Membership_index {
  return arg == 0 ? Membership_index::linear : Membership_index::grid;
}

// One sigma_2 draw in the many-small-regions regime, where membership queries
// dominate.  Arg 0 is the linear scan, arg 1 the grid.
void bm_sigma_small_regions(benchmark::State& state) {
  auto params = Model_params{.d = 2, .volume = 1e4, .alpha = 1.0, .mu = {1e-2, 1e-2}};
  auto options = Sim_options{.index = index_of(state.range(0))};
  auto seed = std::uint64_t{1};
  for (auto _ : state) {
    auto out = simulate_sigma(params, seed++, 1e6, k_default_candidate_cap, options);
    benchmark::DoNotOptimize(out.sigma);
  }
}
BENCHMARK(bm_sigma_small_regions)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// sigma_2 draw where a single region sweeps the torus (fast fixation).
void bm_sigma_fast_fixation(benchmark::State& state) {
  auto params = Model_params{.d = 1, .volume = 1e4, .alpha = 1e6, .mu = {1e-6, 1e-6}};
  auto seed = std::uint64_t{1};
  for (auto _ : state) {
    auto out = simulate_sigma(params, seed++, 1e9);
    benchmark::DoNotOptimize(out.sigma);
  }
}
BENCHMARK(bm_sigma_fast_fixation);

void bm_z_draw(benchmark::State& state) {
  auto c = std::vector<double>(static_cast<std::size_t>(state.range(1)), 1.0);
  auto d = static_cast<int>(state.range(0));
  auto seed = std::uint64_t{1};
  for (auto _ : state) {
    auto out = simulate_z(d, c, seed++, 1e3);
    benchmark::DoNotOptimize(out.sigma);
  }
}
BENCHMARK(bm_z_draw)->Args({1, 2})->Args({2, 2})->Args({2, 3})->Args({3, 3});

void bm_replicate(benchmark::State& state) {
  auto params = Model_params{.d = 2, .volume = 2500, .alpha = 0.7, .mu = {4e-4}};
  for (auto _ : state) {
    auto s = replicate(params, 1000, 7, 1e6, k_default_candidate_cap, {}, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(bm_replicate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
