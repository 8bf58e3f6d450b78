#pragma once

#include "run_config.h"

#include <iosfwd>
#include <string>

namespace mutclock::cli {

enum Exit_code : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_verification_failed = 2,
  exit_timeout_budget = 3,
};

// Worker threads to use: MUTCLOCK_WORKERS if set (and positive), otherwise
// the hardware concurrency.
auto workers_from_env() -> int;

// Every command validates the config first and throws std::invalid_argument
// on bad input; the caller maps that to exit_usage.

// Writes the sorted sigma_k draws as CSV with a `value` header.
auto cmd_simulate(const Run_config& cfg, std::ostream& out, int workers) -> int;
// Regime report as JSON.
auto cmd_classify(const Run_config& cfg, std::ostream& out, int workers) -> int;
// CSV `t,cdf` of the unit-scale law of cfg.case_name on cfg.grid.
auto cmd_law(const Run_config& cfg, std::ostream& out, int workers) -> int;
// Simulates, rescales and compares to the case's law; JSON report.
auto cmd_verify(const Run_config& cfg, std::ostream& out, int workers) -> int;
// Z_{d,k}(c) draws (to `sample_out` when non-null) and a JSON check report.
auto cmd_zdist(const Run_config& cfg, std::ostream* sample_out, std::ostream& report, int workers) -> int;
// Hit-test volume statistics as JSON.
auto cmd_volume(const Run_config& cfg, std::ostream& out, int workers) -> int;

auto tool_version() -> std::string;

}  // namespace mutclock::cli
