#include "mutclock/limit_laws.h"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mutclock {

namespace {

// Rates closer than this (relative to the largest) make the partial-fraction
// weights blow up; such inputs go through the matrix exponential instead.
constexpr auto k_min_relative_gap = 1e-6;

auto partial_fraction_survival(std::span<const double> rates, double t) -> double {
  auto total = 0.0;
  for (auto i = std::size_t{0}; i != rates.size(); ++i) {
    auto weight = 1.0;
    for (auto j = std::size_t{0}; j != rates.size(); ++j) {
      if (j != i) { weight *= rates[j] / (rates[j] - rates[i]); }
    }
    total += weight * std::exp(-rates[i] * t);
  }
  return total;
}

// Phase-type survival e_1^T exp(S t) 1 with S the bidiagonal generator of the
// chain 1 -> 2 -> ... -> n -> absorbed.
auto phase_type_survival(std::span<const double> rates, double t) -> double {
  auto n = static_cast<Eigen::Index>(rates.size());
  auto generator = Eigen::MatrixXd::Zero(n, n).eval();
  for (auto i = Eigen::Index{0}; i != n; ++i) {
    generator(i, i) = -rates[static_cast<std::size_t>(i)] * t;
    if (i + 1 != n) { generator(i, i + 1) = rates[static_cast<std::size_t>(i)] * t; }
  }
  auto transition = generator.exp().eval();
  return transition.row(0).sum();
}

}  // namespace

auto hypoexp_cdf(std::span<const double> rates, double t) -> double {
  auto finite = std::vector<double>{};
  for (auto r : rates) {
    if (std::isnan(r) || r <= 0.0) { throw std::invalid_argument("hypoexp_cdf: rates must be positive"); }
    if (std::isfinite(r)) { finite.push_back(r); }
  }
  if (t < 0.0) { return 0.0; }
  if (finite.empty()) { return 1.0; }  // every summand is zero
  if (t == 0.0) { return 0.0; }
  if (finite.size() == 1) { return -std::expm1(-finite[0] * t); }

  std::ranges::sort(finite);
  auto min_gap = std::numeric_limits<double>::infinity();
  for (auto i = std::size_t{1}; i != finite.size(); ++i) { min_gap = std::min(min_gap, finite[i] - finite[i - 1]); }

  auto surv = min_gap > k_min_relative_gap * finite.back() ? partial_fraction_survival(finite, t)
                                                           : phase_type_survival(finite, t);
  return std::clamp(1.0 - surv, 0.0, 1.0);
}

}  // namespace mutclock
