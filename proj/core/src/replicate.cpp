#include "mutclock/mutation_sim.h"
#include "mutclock/parallel.h"

#include <algorithm>
#include <stdexcept>

namespace mutclock {

auto Empirical_sample::scaled(double factor) const -> Empirical_sample {
  auto out = *this;
  for (auto& v : out.values) { v *= factor; }
  if (factor < 0.0) { std::ranges::reverse(out.values); }
  out.scale_applied *= factor;
  return out;
}

auto replicate(const Model_params& params, std::size_t n, std::uint64_t base_seed, double t_max,
               std::uint64_t candidate_cap, const Sim_options& options, int workers) -> Empirical_sample {
  if (n < 1) { throw std::invalid_argument("replicate: n must be >= 1"); }
  params.validate();

  // Slot i always holds replicate i, whatever thread ran it.
  auto results = std::vector<Sim_outcome>(n);
  parallel_for(n, workers, [&](std::size_t i) {
    results[i] = simulate_sigma(params, replicate_seed(base_seed, i), t_max, candidate_cap, options);
  });

  auto sample = Empirical_sample{};
  sample.base_seed = base_seed;
  sample.values.reserve(n);
  for (const auto& r : results) {
    if (r.sigma) {
      sample.values.push_back(*r.sigma);
    } else {
      ++sample.timeouts;
    }
  }
  std::ranges::sort(sample.values);
  return sample;
}

auto volume_replicates(const Model_params& params, double t, int stage, std::size_t n, std::int64_t samples,
                       std::uint64_t base_seed, std::uint64_t candidate_cap, const Sim_options& options,
                       int workers) -> std::vector<Volume_replicate> {
  if (n < 1) { throw std::invalid_argument("volume_replicates: n must be >= 1"); }
  if (samples < 1) { throw std::invalid_argument("volume_replicates: samples must be >= 1"); }
  params.validate();
  auto probe_base = splitmix64_mix(base_seed ^ 0x5851f42d4c957f2dULL);
  // Every query happens at time t, so size the grid for it.
  auto run_options = options;
  if (run_options.grid_time_hint <= 0.0) { run_options.grid_time_hint = t; }
  auto out = std::vector<Volume_replicate>(n);
  parallel_for(n, workers, [&](std::size_t i) {
    auto process = Mutation_process{params, replicate_seed(base_seed, i), run_options};
    auto& r = out[i];
    r.completed = process.run_to_time(t, candidate_cap);
    auto probe = make_rng(replicate_seed(probe_base, i));
    r.estimate = process.hit_test(stage, t, samples, probe);
    auto origin = std::vector<double>(static_cast<std::size_t>(params.d), 0.0);
    r.origin_covered = process.is_member(process.torus().point(origin), t, stage);
  });
  return out;
}

}  // namespace mutclock
