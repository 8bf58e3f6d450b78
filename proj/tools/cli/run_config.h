#pragma once

#include "mutclock/membership_grid.h"
#include "mutclock/mutation_sim.h"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mutclock::cli {

// One run, as read from a JSON document.  Every field except `model` has a
// default; command-line flags override the matching fields after loading.
struct Run_config {
  Model_params model;
  std::size_t replicates = 1000;
  std::uint64_t seed = 1;
  // t_max = t_max_multiplier * (sum_i 1/(N mu_i) + k * fixation bound), the
  // mean of a variable that stochastically dominates sigma_k.
  double t_max_multiplier = 20.0;
  std::uint64_t candidate_cap = k_default_candidate_cap;
  std::vector<double> grid;
  double confidence = 0.01;
  double threshold = 10.0;
  // Added to the DKW band by `verify` to absorb finite-N bias.
  double model_allowance = 0.0;
  // Largest tolerated fraction of replicates that hit t_max or the cap.
  double max_timeout_fraction = 0.005;
  std::optional<std::string> case_name;
  bool force_case = false;
  Membership_index index = Membership_index::grid;
  // Z rates for `zdist`; empty means use model.mu.
  std::vector<double> z_rates;
  // `volume`: evaluation time, stage and hit-test points per replicate.
  double volume_time = 1.0;
  int volume_stage = 1;
  std::int64_t volume_samples = 10'000;

  // Throws std::invalid_argument naming the first bad field.
  auto validate() const -> void;
  auto t_max() const -> double;
};

auto to_json(nlohmann::json& j, const Run_config& c) -> void;
auto from_json(const nlohmann::json& j, Run_config& c) -> void;

auto load_config(const std::string& path) -> Run_config;
auto parse_config(const std::string& text) -> Run_config;
auto dump_config(const Run_config& c) -> std::string;

// FNV-1a of the canonical JSON form, as 16 hex digits.
auto config_hash(const Run_config& c) -> std::string;

}  // namespace mutclock::cli
