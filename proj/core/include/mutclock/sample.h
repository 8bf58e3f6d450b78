#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mutclock {

// Sorted finite draws of a first-passage time plus the bookkeeping needed to
// judge them.  `scale_applied` is the factor every value has already been
// multiplied by (1 for raw simulator output).
struct Empirical_sample {
  std::vector<double> values;
  std::size_t timeouts = 0;
  std::uint64_t base_seed = 0;
  double scale_applied = 1.0;

  auto n() const -> std::size_t { return values.size(); }
  auto attempted() const -> std::size_t { return values.size() + timeouts; }
  auto timeout_fraction() const -> double {
    return attempted() == 0 ? 0.0 : static_cast<double>(timeouts) / static_cast<double>(attempted());
  }
  // Returns a copy with every value multiplied by `factor`.
  auto scaled(double factor) const -> Empirical_sample;
};

}  // namespace mutclock
