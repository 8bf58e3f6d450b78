#include "commands.h"

#include "mutclock/limit_laws.h"
#include "mutclock/regime.h"
#include "mutclock/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#ifndef MUTCLOCK_VERSION
#define MUTCLOCK_VERSION "unknown"
#endif

namespace mutclock::cli {

namespace {

using nlohmann::json;

auto fmt(double x, int digits) -> std::string {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

auto provenance(const Run_config& cfg, const char* command) -> json {
  return {{"tool", "mutclock"}, {"version", tool_version()}, {"command", command}, {"config_hash", config_hash(cfg)}};
}

auto csv_provenance(std::ostream& out, const Run_config& cfg, const char* command) -> void {
  out << "# mutclock " << tool_version() << " command=" << command << " config_hash=" << config_hash(cfg) << '\n';
}

auto sim_options(const Run_config& cfg) -> Sim_options {
  auto o = Sim_options{};
  o.index = cfg.index;
  return o;
}

// Seed of the reference Z sample, kept apart from the simulation stream.
auto z_seed(const Run_config& cfg) -> std::uint64_t { return splitmix64_mix(cfg.seed ^ 0xd1b54a32d192ed03ULL); }

auto z_options(const Run_config& cfg, int workers) -> Z_law_options {
  auto o = Z_law_options{};
  o.n = cfg.replicates;
  o.seed = z_seed(cfg);
  o.confidence = cfg.confidence;
  o.t_max_multiplier = cfg.t_max_multiplier;
  o.workers = workers;
  return o;
}

auto report_json(const Regime_report& r) -> json {
  auto j = json{
      {"classified", r.classified()},
      {"case", r.case_id ? json(to_string(*r.case_id)) : json(nullptr)},
      {"ratios", r.ratios},
      {"threshold", r.threshold},
      {"margin", r.margin},
      {"path", r.path},
  };
  if (r.classified()) {
    j["law"] = r.law->name();
    j["timescale"] = r.timescale;
  } else {
    j["reason"] = r.reason;
  }
  return j;
}

auto write_sample(std::ostream& out, const Run_config& cfg, const char* command, const Empirical_sample& s) -> void {
  csv_provenance(out, cfg, command);
  out << "# base_seed=" << s.base_seed << " n=" << s.n() << " timeouts=" << s.timeouts
      << " timeout_fraction=" << fmt(s.timeout_fraction(), 6)
      << " timeout_warning=" << (s.timeout_fraction() > cfg.max_timeout_fraction ? "true" : "false")
      << " scale_applied=" << fmt(s.scale_applied, 17) << '\n';
  out << "value\n";
  for (auto v : s.values) { out << fmt(v, 17) << '\n'; }
}

auto mean_and_se(std::span<const double> v) -> std::pair<double, double> {
  auto n = static_cast<double>(v.size());
  auto mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  auto ss = 0.0;
  for (auto x : v) { ss += (x - mean) * (x - mean); }
  auto var = v.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

auto tool_version() -> std::string { return MUTCLOCK_VERSION; }

auto workers_from_env() -> int {
  auto hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const auto* env = std::getenv("MUTCLOCK_WORKERS")) {
    auto value = std::atoi(env);
    if (value > 0) { return value; }
  }
  return hw;
}

auto cmd_simulate(const Run_config& cfg, std::ostream& out, int workers) -> int {
  cfg.validate();
  auto sample = replicate(cfg.model, cfg.replicates, cfg.seed, cfg.t_max(), cfg.candidate_cap, sim_options(cfg), workers);
  write_sample(out, cfg, "simulate", sample);
  return exit_ok;
}

auto cmd_classify(const Run_config& cfg, std::ostream& out, int workers) -> int {
  cfg.validate();
  auto report = classify(cfg.model, cfg.threshold, z_options(cfg, workers));
  auto j = report_json(report);
  j["provenance"] = provenance(cfg, "classify");
  out << j.dump(2) << '\n';
  return exit_ok;
}

auto cmd_law(const Run_config& cfg, std::ostream& out, int workers) -> int {
  cfg.validate();
  if (!cfg.case_name) { throw std::invalid_argument("law: a case is required (--case)"); }
  auto id = parse_case_id(*cfg.case_name, cfg.model.k());
  if (!id) {
    throw std::invalid_argument("law: '" + *cfg.case_name + "' is not a case for k = " + std::to_string(cfg.model.k()));
  }
  auto law = law_for_case(*id, cfg.model, z_options(cfg, workers));
  csv_provenance(out, cfg, "law");
  out << "# law=" << law.name() << " time_scale=" << fmt(law.time_scale, 17) << '\n';
  out << "t,cdf\n";
  for (auto t : cfg.grid) { out << fmt(t, 12) << ',' << fmt(cdf(law, t), 12) << '\n'; }
  return exit_ok;
}

auto cmd_verify(const Run_config& cfg, std::ostream& out, int workers) -> int {
  cfg.validate();
  auto zopt = z_options(cfg, workers);
  auto report = classify(cfg.model, cfg.threshold, zopt);
  auto id = report.case_id;
  if (cfg.case_name) {
    auto requested = parse_case_id(*cfg.case_name, cfg.model.k());
    if (!requested) { throw std::invalid_argument("verify: unknown case '" + *cfg.case_name + "'"); }
    if (requested != id && !cfg.force_case) {
      throw std::invalid_argument("verify: requested " + to_string(*requested) + " but the tuple classifies as " +
                                  (id ? to_string(*id) : std::string{"unclassifiable"}) + "; pass --force-case");
    }
    id = requested;
  } else if (!id) {
    throw std::invalid_argument("verify: tuple is unclassifiable (" + report.reason + "); pass --case and --force-case");
  }

  auto law = id == report.case_id ? *report.law : law_for_case(*id, cfg.model, zopt);
  auto raw = replicate(cfg.model, cfg.replicates, cfg.seed, cfg.t_max(), cfg.candidate_cap, sim_options(cfg), workers);
  auto sample = raw.scaled(law.time_scale);
  auto dkw = dkw_band(cfg.replicates, cfg.confidence);
  auto band = dkw + cfg.model_allowance;
  if (const auto* z = std::get_if<Z_empirical_law>(&law.params)) { band += z->band; }
  auto over_budget = sample.timeout_fraction() > cfg.max_timeout_fraction;
  auto ks = sample.n() > 0 ? ks_statistic(sample, law) : 1.0;
  auto pass = !over_budget && ks < band;

  auto j = json{
      {"case", to_string(*id)},
      {"classified_case", report.case_id ? json(to_string(*report.case_id)) : json(nullptr)},
      {"forced", id != report.case_id},
      {"law", law.name()},
      {"timescale", law.time_scale},
      {"n", sample.n()},
      {"timeouts", sample.timeouts},
      {"timeout_fraction", sample.timeout_fraction()},
      {"ks", ks},
      {"dkw", dkw},
      {"model_allowance", cfg.model_allowance},
      {"band", band},
      {"pass", pass},
      {"provenance", provenance(cfg, "verify")},
  };
  out << j.dump(2) << '\n';
  if (over_budget) { return exit_timeout_budget; }
  return pass ? exit_ok : exit_verification_failed;
}

auto cmd_zdist(const Run_config& cfg, std::ostream* sample_out, std::ostream& report, int workers) -> int {
  cfg.validate();
  auto d = cfg.model.d;
  auto c = cfg.z_rates.empty() ? cfg.model.mu : cfg.z_rates;
  auto k = c.size();
  auto shift = static_cast<double>(k - 1) * std::sqrt(static_cast<double>(d)) / 2.0;
  auto mean_low = 0.0;
  for (auto x : c) { mean_low += 1.0 / x; }
  auto t_max = cfg.t_max_multiplier * (mean_low + shift);

  auto sample = replicate(z_params(d, c), cfg.replicates, cfg.seed, t_max, cfg.candidate_cap, sim_options(cfg), workers);
  if (sample_out) { write_sample(*sample_out, cfg, "zdist", sample); }
  auto over_budget = sample.timeout_fraction() > cfg.max_timeout_fraction;
  auto n = static_cast<double>(sample.n());
  auto all_ok = !over_budget && sample.n() > 0;

  auto checks = json::array();
  if (sample.n() > 0) {
    auto band = dkw_band(sample.n(), cfg.confidence);
    auto grid = cfg.grid;
    if (grid.empty()) {
      for (auto i = 1; i <= 40; ++i) { grid.push_back((mean_low + shift) * 3.0 * i / 40.0); }
    }
    auto worst = -std::numeric_limits<double>::infinity();
    for (auto t : grid) {
      auto b = z_dominance_cdf_bounds(d, c, t);
      auto f = ecdf(sample, t);
      worst = std::max({worst, b.lower - f, f - b.upper});
    }
    auto sandwich_ok = worst <= band;
    checks.push_back({{"check", "sandwich"}, {"max_violation", worst}, {"band", band}, {"pass", sandwich_ok}});

    auto [mean, se] = mean_and_se(sample.values);
    auto mean_ok = mean >= mean_low - 4.0 * se && mean <= mean_low + shift + 4.0 * se;
    checks.push_back({{"check", "mean"},
                      {"mean", mean},
                      {"std_error", se},
                      {"lower", mean_low},
                      {"upper", mean_low + shift},
                      {"pass", mean_ok}});

    auto t_small = 0.2;
    auto p = ecdf(sample, t_small);
    auto p_se = std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
    auto bounds = z_bounds(d, c, t_small);
    auto small_ok = p >= bounds.lower - 4.0 * p_se && p <= bounds.upper + 4.0 * p_se;
    checks.push_back({{"check", "small_t"},
                      {"t", t_small},
                      {"p", p},
                      {"std_error", p_se},
                      {"lower", bounds.lower},
                      {"upper", bounds.upper},
                      {"pass", small_ok}});
    all_ok = all_ok && sandwich_ok && mean_ok && small_ok;
  }

  auto j = json{
      {"d", d},
      {"c", c},
      {"n", sample.n()},
      {"timeouts", sample.timeouts},
      {"timeout_fraction", sample.timeout_fraction()},
      {"checks", checks},
      {"pass", all_ok},
      {"provenance", provenance(cfg, "zdist")},
  };
  report << j.dump(2) << '\n';
  if (over_budget) { return exit_timeout_budget; }
  return all_ok ? exit_ok : exit_verification_failed;
}

auto cmd_volume(const Run_config& cfg, std::ostream& out, int workers) -> int {
  cfg.validate();
  const auto& p = cfg.model;
  auto t = cfg.volume_time;
  auto runs = volume_replicates(p, t, cfg.volume_stage, cfg.replicates, cfg.volume_samples, cfg.seed,
                                cfg.candidate_cap, sim_options(cfg), workers);
  auto estimates = std::vector<double>{};
  auto hit_var = 0.0;
  auto covered = 0.0;
  auto incomplete = std::size_t{0};
  for (const auto& r : runs) {
    estimates.push_back(r.estimate.estimate);
    hit_var += r.estimate.std_error * r.estimate.std_error;
    covered += r.origin_covered ? 1.0 : 0.0;
    incomplete += r.completed ? 0 : 1;
  }
  auto n = static_cast<double>(runs.size());
  auto [mean, se] = mean_and_se(estimates);
  auto sample_var = se * se * n;
  auto origin = covered / n;

  auto j = json{
      {"t", t},
      {"stage", cfg.volume_stage},
      {"replicates", runs.size()},
      {"samples", cfg.volume_samples},
      {"incomplete", incomplete},
      {"mean_volume", mean},
      {"mean_std_error", se},
      {"volume_variance", sample_var},
      {"mean_hit_test_variance", hit_var / n},
      {"origin_fraction", origin},
      {"origin_std_error", std::sqrt(origin * (1.0 - origin) / n)},
      {"provenance", provenance(cfg, "volume")},
  };
  if (cfg.volume_stage >= 1) {
    j["volume_approx"] = stage_volume_approx(t, p, cfg.volume_stage);
    j["occupancy_approx"] = stage_occupancy_approx(t, p, cfg.volume_stage);
  }
  if (cfg.volume_stage == 1 && t <= p.side() / (2.0 * p.alpha)) {
    j["mean_closed_form"] = mean_first_stage_volume(t, p);
    j["variance_bound_factor"] = unit_ball_volume(p.d) * std::pow(2.0 * p.alpha * t, p.d);
  }
  out << j.dump(2) << '\n';
  return incomplete > 0 ? exit_timeout_budget : exit_ok;
}

}  // namespace mutclock::cli
