#include "mutclock/membership_grid.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace mutclock {

namespace {

auto max_cells_per_axis(int dim) -> std::int64_t {
  auto m = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(Membership_grid::k_max_cells), 1.0 / dim)));
  auto fits = [dim](std::int64_t c) {
    auto total = std::uint64_t{1};
    for (auto i = 0; i != dim; ++i) {
      total *= static_cast<std::uint64_t>(c);
      if (total > Membership_grid::k_max_cells) { return false; }
    }
    return true;
  };
  while (m > 1 && !fits(m)) { --m; }
  while (fits(m + 1)) { ++m; }
  return std::max<std::int64_t>(m, 1);
}

}  // namespace

Membership_grid::Membership_grid(const Torus& torus, double alpha, double time_hint)
    : torus_{torus}, alpha_{alpha} {
  if (time_hint > 0.0 && std::isfinite(time_hint)) {
    auto wanted = std::ceil(torus.side / (2.0 * alpha * time_hint));
    auto cap = static_cast<double>(max_cells_per_axis(torus.dim));
    cells_per_axis_ = static_cast<std::int64_t>(std::clamp(wanted, 1.0, cap));
  }
  width_ = torus.side / static_cast<double>(cells_per_axis_);
}

auto Membership_grid::cell_of(double coord) const -> std::int64_t {
  auto c = static_cast<std::int64_t>(coord / width_);
  return std::clamp<std::int64_t>(c, 0, cells_per_axis_ - 1);
}

auto Membership_grid::insert(std::uint32_t index, const Mutation_event& ev) -> void {
  if (empty_ || ev.time < earliest_) { earliest_ = ev.time; }
  empty_ = false;
  auto key = std::uint64_t{0};
  for (auto i = torus_.dim - 1; i >= 0; --i) {
    key = key * static_cast<std::uint64_t>(cells_per_axis_) + static_cast<std::uint64_t>(cell_of(ev.location[i]));
  }
  cells_[key].push_back(index);
}

auto Membership_grid::covers(const Torus_point& x, double t, std::span<const Mutation_event> events) const
    -> std::optional<bool> {
  if (empty_ || t < earliest_) { return false; }
  auto m = cells_per_axis_;
  auto scan_all = m <= 3;
  if (!scan_all && alpha_ * (t - earliest_) > width_) { return std::nullopt; }

  auto dim = torus_.dim;
  // Per-axis list of cells to visit.
  auto axis_cells = std::array<std::array<std::int64_t, 3>, k_max_dimension>{};
  auto axis_count = std::array<int, k_max_dimension>{};
  for (auto i = 0; i != dim; ++i) {
    auto ui = static_cast<std::size_t>(i);
    if (scan_all) {
      axis_count[ui] = static_cast<int>(m);
      for (auto c = 0; c != m; ++c) { axis_cells[ui][static_cast<std::size_t>(c)] = c; }
    } else {
      auto c = cell_of(x[i]);
      axis_count[ui] = 3;
      axis_cells[ui] = {(c + m - 1) % m, c, (c + 1) % m};
    }
  }

  auto odometer = std::array<int, k_max_dimension>{};
  while (true) {
    auto key = std::uint64_t{0};
    for (auto i = dim - 1; i >= 0; --i) {
      auto ui = static_cast<std::size_t>(i);
      key = key * static_cast<std::uint64_t>(m) +
            static_cast<std::uint64_t>(axis_cells[ui][static_cast<std::size_t>(odometer[ui])]);
    }
    if (auto it = cells_.find(key); it != cells_.end()) {
      const auto& members = it->second;
      for (auto r = members.rbegin(); r != members.rend(); ++r) {
        const auto& ev = events[*r];
        if (in_cone(x, t, Cone{ev.location, ev.time, alpha_}, torus_.side)) { return true; }
      }
    }
    auto axis = 0;
    while (axis != dim) {
      auto ua = static_cast<std::size_t>(axis);
      if (++odometer[ua] < axis_count[ua]) { break; }
      odometer[ua] = 0;
      ++axis;
    }
    if (axis == dim) { break; }
  }
  return false;
}

}  // namespace mutclock
