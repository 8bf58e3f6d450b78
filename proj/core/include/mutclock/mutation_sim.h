#pragma once

#include "mutclock/membership_grid.h"
#include "mutclock/random.h"
#include "mutclock/sample.h"
#include "mutclock/torus.h"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mutclock {

inline constexpr std::uint64_t k_default_candidate_cap = 100'000'000;

// Model on the torus of volume N = L^d.  Stage-(j-1) sites acquire a j-th
// mutation at rate mu[j-1] per unit volume per unit time; every mutant region
// grows as a ball of radius alpha * (elapsed time).  The target stage is
// k = mu.size().
struct Model_params {
  int d = 1;
  double volume = 1.0;
  double alpha = 1.0;
  std::vector<double> mu;

  auto k() const -> int { return static_cast<int>(mu.size()); }
  auto torus() const -> Torus { return Torus::from_volume(d, volume); }
  auto side() const -> double { return torus().side; }
  // Throws std::invalid_argument when any field is out of range.
  auto validate() const -> void;
};

enum class Membership_index { linear, grid };

struct Sim_options {
  Membership_index index = Membership_index::linear;
  // Time horizon used to size grid cells; 0 picks a default from the
  // parameters.
  double grid_time_hint = 0.0;
  // Coupling mode.  When non-empty, candidates are drawn from a dominating
  // stream with these rates (each >= the matching mu) and a stage-j candidate
  // is present with probability mu_j / dominating_mu_j, decided by a uniform
  // mark drawn with the candidate.  Runs sharing a seed and dominating rates
  // see the same stream, so raising any mu_j can only make sigma_k earlier.
  std::vector<double> dominating_mu;
};

struct Candidate {
  int stage;
  Torus_point location;
  double time;
};

struct Process_state {
  // accepted[j - 1] holds the accepted stage-j events in time order.
  std::vector<std::vector<Mutation_event>> accepted;
  // Stage-j events accepted after stage j already covered the whole torus.
  // They cannot change any later membership answer, so they are only counted.
  std::vector<std::uint64_t> absorbed;
  std::uint64_t candidate_count = 0;
  double clock = 0.0;

  explicit Process_state(int k = 0) : accepted(static_cast<std::size_t>(k)), absorbed(static_cast<std::size_t>(k), 0) {}

  auto accepted_count(int stage) const -> std::uint64_t {
    auto s = static_cast<std::size_t>(stage - 1);
    return accepted[s].size() + absorbed[s];
  }
};

// One candidate of the merged stream: the clock advances by an
// Exponential(N * sum(mu)) increment, the stage is j with probability
// mu_j / sum(mu) and the location is uniform on the torus.
auto next_candidate(const Model_params& params, Process_state& state, Rng& rng) -> Candidate;

// Reference membership test: is x of type >= stage at time t?  Stage 0 is
// the whole torus; otherwise x must lie in the cone of an accepted event of
// that stage.  Throws std::invalid_argument when stage > k.
auto is_member(const Torus_point& x, double t, int stage, const Process_state& state,
               const Model_params& params) -> bool;

enum class Stop_reason { reached_target, time_limit, candidate_cap };

struct Sim_outcome {
  std::optional<double> sigma;
  Stop_reason reason = Stop_reason::time_limit;
  std::vector<std::uint64_t> accepted_per_stage;
  double clock = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t candidates_used = 0;

  auto timed_out() const -> bool { return !sigma.has_value(); }
};

// Exact event-driven realization of the process by thinning: candidates are
// processed in time order and a stage-j candidate is accepted iff its site is
// already of type >= j-1.
//
// Two exact shortcuts are applied on top of the plain construction.  Once a
// stage has existed for longer than diameter / alpha its first event covers
// the whole torus, so membership in that stage is answered in O(1).  Outside
// coupling mode such a saturated stage is also removed from the merged clock
// (by memorylessness this leaves the law of the remaining stream unchanged).
class Mutation_process {
 public:
  Mutation_process(Model_params params, std::uint64_t seed, Sim_options options = {});

  auto params() const -> const Model_params& { return params_; }
  auto state() const -> const Process_state& { return state_; }
  auto torus() const -> const Torus& { return torus_; }

  // Next candidate of the (possibly reduced) merged stream; nullopt once every
  // stage is saturated.
  auto next_candidate() -> std::optional<Candidate>;
  auto is_member(const Torus_point& x, double t, int stage) const -> bool;
  // Applies the thinning rule; returns true if the candidate was accepted.
  auto offer(const Candidate& c) -> bool;

  // Runs until the first accepted stage-`stage` event.
  auto run_to_stage(int stage, double t_max, std::uint64_t candidate_cap) -> Sim_outcome;
  // Processes every candidate with time <= t_end.  Returns false if the
  // candidate cap was hit first.
  auto run_to_time(double t_end, std::uint64_t candidate_cap) -> bool;

  // Monte Carlo estimate of |psi_stage(t)| using this process's index.
  auto hit_test(int stage, double t, std::int64_t n_samples, Rng& rng) const -> Volume_estimate;

 private:
  auto saturation_time(int stage) const -> double { return saturation_[static_cast<std::size_t>(stage - 1)]; }
  auto refresh_rates() -> void;
  auto ensure_grids(double time_hint) -> void;
  auto default_grid_hint() const -> double;

  Model_params params_;
  Sim_options options_;
  Torus torus_;
  Rng rng_;
  Process_state state_;
  std::vector<double> stream_rates_;   // mu, or the dominating rates
  std::vector<double> active_rates_;   // stream_rates_ with saturated stages zeroed
  double active_total_ = 0.0;
  std::vector<double> saturation_;     // first event time + diameter / alpha
  std::vector<bool> dropped_;
  std::vector<Membership_grid> grids_;
  double fill_time_ = 0.0;             // diameter / alpha
};

auto simulate_sigma(const Model_params& params, std::uint64_t seed, double t_max,
                    std::uint64_t candidate_cap = k_default_candidate_cap,
                    const Sim_options& options = {}) -> Sim_outcome;

// sigma_k on the unit torus with unit speed and rates c.
auto simulate_z(int d, std::span<const double> c, std::uint64_t seed, double t_max,
                std::uint64_t candidate_cap = k_default_candidate_cap,
                const Sim_options& options = {}) -> Sim_outcome;

auto z_params(int d, std::span<const double> c) -> Model_params;

// n independent runs with seeds replicate_seed(base_seed, i).  The result is
// sorted and therefore independent of `workers` and scheduling.
auto replicate(const Model_params& params, std::size_t n, std::uint64_t base_seed, double t_max,
               std::uint64_t candidate_cap = k_default_candidate_cap,
               const Sim_options& options = {}, int workers = 1) -> Empirical_sample;

struct Volume_replicate {
  // Hit-test estimate of Y_stage(t).
  Volume_estimate estimate;
  // Whether the origin is of type >= stage at t.
  bool origin_covered = false;
  // False if the candidate cap stopped the run before t.
  bool completed = true;
};

// Runs `n` independent processes up to time t (seeds replicate_seed(base_seed,
// i)) and measures the stage-`stage` region of each with `samples` uniform
// points drawn from a second, independent stream.
auto volume_replicates(const Model_params& params, double t, int stage, std::size_t n, std::int64_t samples,
                       std::uint64_t base_seed, std::uint64_t candidate_cap = k_default_candidate_cap,
                       const Sim_options& options = {}, int workers = 1) -> std::vector<Volume_replicate>;

}  // namespace mutclock
