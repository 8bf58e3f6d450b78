#pragma once

#include "mutclock/limit_laws.h"
#include "mutclock/mutation_sim.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mutclock {

inline constexpr double k_default_threshold = 10.0;

// Dimensionless diagnostics of a parameter tuple:
//   r_fix<i> = mu_i N^{(d+1)/d} / alpha          (one per stage)
//   r_beta   = mu_2 alpha^d / (N mu_1)^{d+1}      (k >= 2)
//   r_sat    = N mu_2 / (mu_1 alpha^d)^{1/(d+1)}  (k >= 2)
//   r_mu     = mu_2 / mu_1                        (k == 2)
auto diagnostics(const Model_params& params) -> std::map<std::string, double>;

enum class Order { much_less, comparable, much_greater };

auto compare(double ratio, double threshold) -> Order;
auto to_string(Order o) -> std::string;

struct Regime_report {
  // Empty when the tuple is unclassifiable; `reason` says why.
  std::optional<Case_id> case_id;
  std::map<std::string, double> ratios;
  std::optional<Limit_law> law;
  double timescale = 0.0;
  // Smallest factor by which a ratio used in the decision clears the nearest
  // threshold (1 means sitting on a threshold).
  double margin = 0.0;
  double threshold = k_default_threshold;
  // The decisions taken, in order, e.g. "r_fix1 << 1".
  std::vector<std::string> path;
  std::string reason;

  auto classified() const -> bool { return case_id.has_value(); }
};

// Ratios are read as << below 1/threshold, >> above threshold and comparable
// in between.  k = 2 walks the decision tree first on r_fix1 and then on the
// case's second condition; k >= 3 needs equal rates (relative tolerance
// 1e-12) and branches on r_fix1 only.  Throws std::invalid_argument for an
// invalid tuple or threshold <= 1.
auto classify(const Model_params& params, double threshold = k_default_threshold,
              const Z_law_options& z_options = {}) -> Regime_report;

// Factor m such that m * sigma_k is compared to the unit-scale law.  Throws
// std::invalid_argument for an unclassified report.
auto predicted_timescale(const Regime_report& report) -> double;

}  // namespace mutclock
