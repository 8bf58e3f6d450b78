#include "mutclock/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mutclock {

auto ecdf(std::span<const double> sorted, double t) -> double {
  if (sorted.empty()) { throw std::invalid_argument("ecdf: empty sample"); }
  auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

auto ecdf(const Empirical_sample& sample, double t) -> double { return ecdf(sample.values, t); }

auto ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) -> double {
  if (sorted.empty()) { throw std::invalid_argument("ks_statistic: empty sample"); }
  auto n = static_cast<double>(sorted.size());
  auto worst = 0.0;
  for (auto i = std::size_t{0}; i != sorted.size(); ++i) {
    auto f = cdf(sorted[i]);
    auto above = static_cast<double>(i + 1) / n - f;
    auto below = f - static_cast<double>(i) / n;
    worst = std::max({worst, above, below});
  }
  return worst;
}

auto ks_statistic(std::span<const double> sorted, const Limit_law& law) -> double {
  if (const auto* z = std::get_if<Z_empirical_law>(&law.params)) {
    if (!z->sample) { throw std::invalid_argument("ks_statistic: empirical law without a sample"); }
    return two_sample_ks(sorted, z->sample->values);
  }
  return ks_statistic(sorted, [&law](double t) { return cdf(law, t); });
}

auto ks_statistic(const Empirical_sample& sample, const Limit_law& law) -> double {
  return ks_statistic(sample.values, law);
}

auto dkw_band(std::size_t n, double delta) -> double {
  if (n < 1) { throw std::invalid_argument("dkw_band: n must be >= 1"); }
  if (!(delta > 0.0 && delta < 1.0)) { throw std::invalid_argument("dkw_band: delta must be in (0, 1)"); }
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

auto two_sample_ks(std::span<const double> a, std::span<const double> b) -> double {
  if (a.empty() || b.empty()) { throw std::invalid_argument("two_sample_ks: empty sample"); }
  auto na = static_cast<double>(a.size());
  auto nb = static_cast<double>(b.size());
  auto i = std::size_t{0};
  auto j = std::size_t{0};
  auto worst = 0.0;
  while (i != a.size() && j != b.size()) {
    auto t = std::min(a[i], b[j]);
    while (i != a.size() && a[i] <= t) { ++i; }
    while (j != b.size() && b[j] <= t) { ++j; }
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

}  // namespace mutclock
