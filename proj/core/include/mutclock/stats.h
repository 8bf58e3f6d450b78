#pragma once

#include "mutclock/limit_laws.h"
#include "mutclock/sample.h"

#include <functional>
#include <span>

namespace mutclock {

// Right-continuous empirical CDF of sorted values.  Throws
// std::invalid_argument on an empty sample.
auto ecdf(std::span<const double> sorted, double t) -> double;
auto ecdf(const Empirical_sample& sample, double t) -> double;

// sup_t |ecdf(t) - cdf(t)| for a continuous cdf, evaluated at the jumps with
// the one-sided corrections max(i/n - F(x_i), F(x_i) - (i-1)/n).
auto ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) -> double;
// Against a limit law; the sample must already be on the law's unit scale.
// An empirical law is compared with the two-sample statistic.
auto ks_statistic(std::span<const double> sorted, const Limit_law& law) -> double;
auto ks_statistic(const Empirical_sample& sample, const Limit_law& law) -> double;

// sqrt(ln(2/delta) / (2n)).
auto dkw_band(std::size_t n, double delta) -> double;

// sup_t |ecdf_a(t) - ecdf_b(t)| over sorted inputs.
auto two_sample_ks(std::span<const double> a, std::span<const double> b) -> double;

}  // namespace mutclock
