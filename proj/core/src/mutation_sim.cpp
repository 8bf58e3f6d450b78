#include "mutclock/mutation_sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mutclock {

namespace {

constexpr auto k_inf = std::numeric_limits<double>::infinity();

auto draw_stage(std::span<const double> rates, double total, Rng& rng) -> int {
  auto u = uniform01(rng) * total;
  auto last_positive = 0;
  for (auto j = std::size_t{0}; j != rates.size(); ++j) {
    if (rates[j] <= 0.0) { continue; }
    last_positive = static_cast<int>(j) + 1;
    if (u < rates[j]) { return last_positive; }
    u -= rates[j];
  }
  return last_positive;  // u landed on the rounding slack at the top
}

auto check_stage(int stage, int k) -> void {
  if (stage < 0 || stage > k) {
    throw std::invalid_argument("stage " + std::to_string(stage) + " outside [0, " + std::to_string(k) + "]");
  }
}

auto linear_scan(const Torus_point& x, double t, std::span<const Mutation_event> events, double alpha,
                 double side) -> bool {
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (in_cone(x, t, Cone{it->location, it->time, alpha}, side)) { return true; }
  }
  return false;
}

}  // namespace

auto Model_params::validate() const -> void {
  if (d < 1 || d > k_max_dimension) {
    throw std::invalid_argument("d must be in [1, " + std::to_string(k_max_dimension) + "]");
  }
  if (!(volume > 0.0) || !std::isfinite(volume)) { throw std::invalid_argument("N must be positive and finite"); }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) { throw std::invalid_argument("alpha must be positive and finite"); }
  if (mu.empty()) { throw std::invalid_argument("at least one mutation rate is required"); }
  for (auto m : mu) {
    if (!(m > 0.0) || !std::isfinite(m)) { throw std::invalid_argument("mutation rates must be positive and finite"); }
  }
}

auto next_candidate(const Model_params& params, Process_state& state, Rng& rng) -> Candidate {
  auto torus = params.torus();
  auto sum_mu = std::accumulate(params.mu.begin(), params.mu.end(), 0.0);
  state.clock += exponential(rng, params.volume * sum_mu);
  ++state.candidate_count;
  auto stage = draw_stage(params.mu, sum_mu, rng);
  return Candidate{stage, torus.random_point(rng), state.clock};
}

auto is_member(const Torus_point& x, double t, int stage, const Process_state& state,
               const Model_params& params) -> bool {
  check_stage(stage, params.k());
  if (stage == 0) { return true; }
  return linear_scan(x, t, state.accepted[static_cast<std::size_t>(stage - 1)], params.alpha, params.side());
}

Mutation_process::Mutation_process(Model_params params, std::uint64_t seed, Sim_options options)
    : params_{std::move(params)},
      options_{std::move(options)},
      torus_{},
      rng_{make_rng(seed)},
      state_{0} {
  params_.validate();
  torus_ = params_.torus();
  auto k = static_cast<std::size_t>(params_.k());
  state_ = Process_state{params_.k()};
  if (options_.dominating_mu.empty()) {
    stream_rates_ = params_.mu;
  } else {
    if (options_.dominating_mu.size() != k) {
      throw std::invalid_argument("dominating_mu must have one rate per stage");
    }
    for (auto j = std::size_t{0}; j != k; ++j) {
      if (!(options_.dominating_mu[j] >= params_.mu[j]) || !std::isfinite(options_.dominating_mu[j])) {
        throw std::invalid_argument("dominating rates must be finite and >= mu");
      }
    }
    stream_rates_ = options_.dominating_mu;
  }
  saturation_.assign(k, k_inf);
  dropped_.assign(k, false);
  fill_time_ = torus_.diameter() / params_.alpha;
  refresh_rates();
  if (options_.index == Membership_index::grid) {
    ensure_grids(options_.grid_time_hint > 0.0 ? options_.grid_time_hint : default_grid_hint());
  }
}

auto Mutation_process::refresh_rates() -> void {
  active_rates_ = stream_rates_;
  for (auto j = std::size_t{0}; j != active_rates_.size(); ++j) {
    if (dropped_[j]) { active_rates_[j] = 0.0; }
  }
  active_total_ = std::accumulate(active_rates_.begin(), active_rates_.end(), 0.0);
}

auto Mutation_process::default_grid_hint() const -> double {
  // A few multiples of the many-small-regions time scale, capped by the time
  // a single region needs to fill the torus.  Later queries fall back to the
  // linear scan, so this only affects speed.
  auto k = static_cast<double>(params_.k());
  auto d = static_cast<double>(params_.d);
  auto log_base = std::log(params_.volume) + (k - 1.0) * d * std::log(params_.alpha);
  for (auto m : params_.mu) { log_base += std::log(m); }
  auto beta = std::exp(-log_base / ((k - 1.0) * d + k));
  return 3.0 * std::min(beta, fill_time_);
}

auto Mutation_process::ensure_grids(double time_hint) -> void {
  if (!grids_.empty()) { return; }
  for (auto j = 0; j != params_.k(); ++j) {
    auto& grid = grids_.emplace_back(torus_, params_.alpha, time_hint);
    const auto& list = state_.accepted[static_cast<std::size_t>(j)];
    for (auto i = std::size_t{0}; i != list.size(); ++i) { grid.insert(static_cast<std::uint32_t>(i), list[i]); }
  }
}

auto Mutation_process::next_candidate() -> std::optional<Candidate> {
  auto coupling = !options_.dominating_mu.empty();
  while (true) {
    if (active_total_ <= 0.0) {
      state_.clock = k_inf;
      return std::nullopt;
    }
    auto dt = exponential(rng_, params_.volume * active_total_);
    if (!coupling) {
      // Drop the earliest stage that saturates before the tentative arrival and
      // restart the clock there.
      auto next_sat = k_inf;
      auto which = std::size_t{0};
      for (auto j = std::size_t{0}; j != saturation_.size(); ++j) {
        if (!dropped_[j] && saturation_[j] < next_sat) {
          next_sat = saturation_[j];
          which = j;
        }
      }
      if (next_sat < state_.clock + dt) {
        state_.clock = std::max(state_.clock, next_sat);
        dropped_[which] = true;
        refresh_rates();
        continue;
      }
    }
    state_.clock += dt;
    ++state_.candidate_count;
    auto stage = draw_stage(active_rates_, active_total_, rng_);
    return Candidate{stage, torus_.random_point(rng_), state_.clock};
  }
}

auto Mutation_process::is_member(const Torus_point& x, double t, int stage) const -> bool {
  check_stage(stage, params_.k());
  if (stage == 0) { return true; }
  auto s = static_cast<std::size_t>(stage - 1);
  const auto& events = state_.accepted[s];
  if (events.empty()) { return false; }
  if (saturation_[s] <= t) { return true; }
  if (!grids_.empty()) {
    if (auto answer = grids_[s].covers(x, t, events)) { return *answer; }
  }
  return linear_scan(x, t, events, params_.alpha, torus_.side);
}

auto Mutation_process::offer(const Candidate& c) -> bool {
  auto s = static_cast<std::size_t>(c.stage - 1);
  if (!options_.dominating_mu.empty()) {
    // The mark is always drawn so the stream does not depend on mu.
    auto mark = uniform01(rng_);
    if (mark * stream_rates_[s] >= params_.mu[s]) { return false; }
  }
  if (c.stage > 1 && state_.accepted[s - 1].empty()) { return false; }
  if (!is_member(c.location, c.time, c.stage - 1)) { return false; }

  if (saturation_[s] <= c.time) {
    ++state_.absorbed[s];
    return true;
  }
  auto& list = state_.accepted[s];
  if (list.empty()) { saturation_[s] = c.time + fill_time_; }
  list.push_back(Mutation_event{c.stage, c.location, c.time});
  if (!grids_.empty()) { grids_[s].insert(static_cast<std::uint32_t>(list.size() - 1), list.back()); }
  return true;
}

auto Mutation_process::run_to_stage(int stage, double t_max, std::uint64_t candidate_cap) -> Sim_outcome {
  check_stage(stage, params_.k());
  if (!(t_max > 0.0)) { throw std::invalid_argument("t_max must be positive"); }
  if (candidate_cap < 1) { throw std::invalid_argument("candidate_cap must be >= 1"); }

  auto outcome = Sim_outcome{};
  auto finish = [&](Stop_reason reason) {
    outcome.reason = reason;
    outcome.clock = state_.clock;
    outcome.candidates_used = state_.candidate_count;
    for (auto j = 1; j <= params_.k(); ++j) { outcome.accepted_per_stage.push_back(state_.accepted_count(j)); }
    return outcome;
  };

  if (stage == 0) {
    outcome.sigma = 0.0;
    return finish(Stop_reason::reached_target);
  }
  while (true) {
    if (state_.candidate_count >= candidate_cap) { return finish(Stop_reason::candidate_cap); }
    auto c = next_candidate();
    if (!c || c->time > t_max) {
      state_.clock = t_max;
      return finish(Stop_reason::time_limit);
    }
    if (offer(*c) && c->stage == stage) {
      outcome.sigma = c->time;
      return finish(Stop_reason::reached_target);
    }
  }
}

auto Mutation_process::run_to_time(double t_end, std::uint64_t candidate_cap) -> bool {
  if (!(t_end >= 0.0)) { throw std::invalid_argument("t_end must be >= 0"); }
  while (true) {
    if (state_.candidate_count >= candidate_cap) { return false; }
    // The first candidate past t_end is discarded; the run ends there.
    auto c = next_candidate();
    if (!c || c->time > t_end) {
      state_.clock = t_end;
      return true;
    }
    offer(*c);
  }
}

auto Mutation_process::hit_test(int stage, double t, std::int64_t n_samples, Rng& rng) const -> Volume_estimate {
  check_stage(stage, params_.k());
  if (n_samples < 1) { throw std::invalid_argument("hit_test: n_samples must be >= 1"); }
  if (stage == 0) { return {torus_.volume(), 0.0}; }
  if (state_.accepted[static_cast<std::size_t>(stage - 1)].empty()) { return {0.0, 0.0}; }
  auto hits = std::int64_t{0};
  for (auto i = std::int64_t{0}; i != n_samples; ++i) {
    if (is_member(torus_.random_point(rng), t, stage)) { ++hits; }
  }
  auto n = static_cast<double>(n_samples);
  auto p = static_cast<double>(hits) / n;
  return {torus_.volume() * p, torus_.volume() * std::sqrt(p * (1.0 - p) / n)};
}

auto simulate_sigma(const Model_params& params, std::uint64_t seed, double t_max, std::uint64_t candidate_cap,
                    const Sim_options& options) -> Sim_outcome {
  auto process = Mutation_process{params, seed, options};
  auto outcome = process.run_to_stage(params.k(), t_max, candidate_cap);
  outcome.seed = seed;
  return outcome;
}

auto z_params(int d, std::span<const double> c) -> Model_params {
  return Model_params{d, 1.0, 1.0, std::vector<double>(c.begin(), c.end())};
}

auto simulate_z(int d, std::span<const double> c, std::uint64_t seed, double t_max, std::uint64_t candidate_cap,
                const Sim_options& options) -> Sim_outcome {
  return simulate_sigma(z_params(d, c), seed, t_max, candidate_cap, options);
}

}  // namespace mutclock
