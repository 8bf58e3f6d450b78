#include "run_config.h"

#include "mutclock/limit_laws.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mutclock::cli {

namespace {

using nlohmann::json;

auto check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) -> void {
  if (!j.is_object()) { throw std::invalid_argument(where + " must be a JSON object"); }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) { throw std::invalid_argument("unknown field '" + key + "' in " + where); }
  }
}

template <class T>
auto read_if(const json& j, const char* key, T& out) -> void {
  if (j.contains(key)) { j.at(key).get_to(out); }
}

auto positive(double x, const char* name) -> void {
  if (!(x > 0.0) || !std::isfinite(x)) { throw std::invalid_argument(std::string{name} + " must be positive"); }
}

}  // namespace

auto Run_config::validate() const -> void {
  model.validate();
  if (replicates < 1) { throw std::invalid_argument("replicates must be >= 1"); }
  positive(t_max_multiplier, "t_max_multiplier");
  if (candidate_cap < 1) { throw std::invalid_argument("candidate_cap must be >= 1"); }
  for (auto t : grid) {
    if (!std::isfinite(t) || t < 0.0) { throw std::invalid_argument("grid times must be finite and >= 0"); }
  }
  if (!(confidence > 0.0 && confidence < 1.0)) { throw std::invalid_argument("confidence must be in (0, 1)"); }
  if (!(threshold > 1.0) || !std::isfinite(threshold)) { throw std::invalid_argument("threshold must be > 1"); }
  if (!(model_allowance >= 0.0)) { throw std::invalid_argument("model_allowance must be >= 0"); }
  if (!(max_timeout_fraction >= 0.0 && max_timeout_fraction <= 1.0)) {
    throw std::invalid_argument("max_timeout_fraction must be in [0, 1]");
  }
  for (auto c : z_rates) { positive(c, "z_rates entries"); }
  if (!(volume_time >= 0.0) || !std::isfinite(volume_time)) { throw std::invalid_argument("volume.t must be >= 0"); }
  if (volume_stage < 0 || volume_stage > model.k()) { throw std::invalid_argument("volume.stage outside [0, k]"); }
  if (volume_samples < 1) { throw std::invalid_argument("volume.samples must be >= 1"); }
}

auto Run_config::t_max() const -> double {
  auto horizon = static_cast<double>(model.k()) * fixation_time_bound(model.d, model.volume, model.alpha);
  for (auto m : model.mu) { horizon += 1.0 / (model.volume * m); }
  return t_max_multiplier * horizon;
}

auto to_json(json& j, const Run_config& c) -> void {
  j = json{
      {"model", {{"d", c.model.d}, {"N", c.model.volume}, {"alpha", c.model.alpha}, {"mu", c.model.mu}}},
      {"replicates", c.replicates},
      {"seed", c.seed},
      {"t_max_multiplier", c.t_max_multiplier},
      {"candidate_cap", c.candidate_cap},
      {"grid", c.grid},
      {"confidence", c.confidence},
      {"threshold", c.threshold},
      {"model_allowance", c.model_allowance},
      {"max_timeout_fraction", c.max_timeout_fraction},
      {"case", c.case_name ? json(*c.case_name) : json(nullptr)},
      {"force_case", c.force_case},
      {"index", c.index == Membership_index::grid ? "grid" : "linear"},
      {"z_rates", c.z_rates},
      {"volume", {{"t", c.volume_time}, {"stage", c.volume_stage}, {"samples", c.volume_samples}}},
  };
}

auto from_json(const json& j, Run_config& c) -> void {
  check_keys(j,
             {"model", "replicates", "seed", "t_max_multiplier", "candidate_cap", "grid", "confidence", "threshold",
              "model_allowance", "max_timeout_fraction", "case", "force_case", "index", "z_rates", "volume"},
             "config");
  if (!j.contains("model")) { throw std::invalid_argument("config is missing 'model'"); }
  const auto& m = j.at("model");
  check_keys(m, {"d", "N", "alpha", "mu"}, "model");
  read_if(m, "d", c.model.d);
  read_if(m, "N", c.model.volume);
  read_if(m, "alpha", c.model.alpha);
  read_if(m, "mu", c.model.mu);
  read_if(j, "replicates", c.replicates);
  read_if(j, "seed", c.seed);
  read_if(j, "t_max_multiplier", c.t_max_multiplier);
  read_if(j, "candidate_cap", c.candidate_cap);
  read_if(j, "grid", c.grid);
  read_if(j, "confidence", c.confidence);
  read_if(j, "threshold", c.threshold);
  read_if(j, "model_allowance", c.model_allowance);
  read_if(j, "max_timeout_fraction", c.max_timeout_fraction);
  if (j.contains("case") && !j.at("case").is_null()) { c.case_name = j.at("case").get<std::string>(); }
  read_if(j, "force_case", c.force_case);
  if (j.contains("index")) {
    auto name = j.at("index").get<std::string>();
    if (name == "grid") {
      c.index = Membership_index::grid;
    } else if (name == "linear") {
      c.index = Membership_index::linear;
    } else {
      throw std::invalid_argument("index must be 'grid' or 'linear'");
    }
  }
  read_if(j, "z_rates", c.z_rates);
  if (j.contains("volume")) {
    const auto& v = j.at("volume");
    check_keys(v, {"t", "stage", "samples"}, "volume");
    read_if(v, "t", c.volume_time);
    read_if(v, "stage", c.volume_stage);
    read_if(v, "samples", c.volume_samples);
  }
}

auto parse_config(const std::string& text) -> Run_config {
  auto c = Run_config{};
  try {
    from_json(json::parse(text), c);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string{"bad config: "} + e.what());
  }
  return c;
}

auto load_config(const std::string& path) -> Run_config {
  auto in = std::ifstream{path};
  if (!in) { throw std::invalid_argument("cannot read config file " + path); }
  auto buffer = std::ostringstream{};
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

auto dump_config(const Run_config& c) -> std::string { return json(c).dump(2); }

auto config_hash(const Run_config& c) -> std::string {
  auto h = std::uint64_t{0xcbf29ce484222325ULL};
  for (auto ch : json(c).dump()) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace mutclock::cli
