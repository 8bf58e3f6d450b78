#pragma once

#include "mutclock/torus.h"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace mutclock {

// Uniform grid over event apexes for one stage.  Cells have width
// L / ceil(L / (2 alpha t_hint)), capped so there are at most k_max_cells
// cells in total.  As long as every cone radius alpha * (t - s) is at most one
// cell width, a covering apex lies in the query cell or one of its 3^d
// neighbours; otherwise the query is declined and the caller falls back to a
// linear scan.  Answers are identical to the linear scan.
class Membership_grid {
 public:
  static constexpr std::uint64_t k_max_cells = std::uint64_t{1} << 24;

  Membership_grid(const Torus& torus, double alpha, double time_hint);

  auto cells_per_axis() const -> std::int64_t { return cells_per_axis_; }
  auto cell_width() const -> double { return width_; }

  // `index` refers to the owning stage's event list.
  auto insert(std::uint32_t index, const Mutation_event& ev) -> void;

  // nullopt: the grid cannot answer (some radius exceeds a cell width).
  auto covers(const Torus_point& x, double t, std::span<const Mutation_event> events) const
      -> std::optional<bool>;

 private:
  auto cell_of(double coord) const -> std::int64_t;

  Torus torus_;
  double alpha_;
  std::int64_t cells_per_axis_ = 1;
  double width_ = 0.0;
  double earliest_ = 0.0;
  bool empty_ = true;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

}  // namespace mutclock
