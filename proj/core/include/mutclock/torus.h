#pragma once

#include "mutclock/random.h"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mutclock {

inline constexpr int k_max_dimension = 8;

// A point of the torus [0, L)^d.  Coordinates are reduced to [0, L) on
// construction.
class Torus_point {
 public:
  Torus_point() = default;
  Torus_point(std::span<const double> coords, double side);
  Torus_point(std::initializer_list<double> coords, double side)
      : Torus_point{std::span<const double>{coords.begin(), coords.size()}, side} {}

  auto dim() const -> int { return dim_; }
  auto operator[](int i) const -> double { return coords_[static_cast<std::size_t>(i)]; }
  auto coords() const -> std::span<const double> {
    return {coords_.data(), static_cast<std::size_t>(dim_)};
  }

  friend auto operator==(const Torus_point&, const Torus_point&) -> bool = default;

 private:
  std::array<double, k_max_dimension> coords_{};
  int dim_ = 0;
};

struct Torus {
  int dim;
  double side;

  static auto from_volume(int dim, double volume) -> Torus;

  auto volume() const -> double;
  auto point(std::span<const double> coords) const -> Torus_point { return {coords, side}; }
  auto random_point(Rng& rng) const -> Torus_point;
  // Largest possible distance between two points, sqrt(d) L / 2.
  auto diameter() const -> double;
};

// Squared wraparound distance; the hot path of every membership test.
inline auto torus_distance_sq(const Torus_point& x, const Torus_point& y, double side) -> double {
  auto half = 0.5 * side;
  auto sum = 0.0;
  for (auto i = 0; i != x.dim(); ++i) {
    auto diff = x[i] - y[i];
    if (diff < 0.0) { diff = -diff; }
    if (diff > half) { diff = side - diff; }
    sum += diff * diff;
  }
  return sum;
}

// Euclidean combination of the coordinatewise metric min{|x-y|, L-|x-y|}.
// Throws std::invalid_argument on dimension mismatch or L <= 0.
auto torus_distance(const Torus_point& x, const Torus_point& y, double side) -> double;

// Volume of the unit ball in R^d, pi^{d/2} / Gamma(d/2 + 1).
auto unit_ball_volume(int d) -> double;

// The space-time region reached by a mutation born at (apex, apex_time) and
// spreading at `speed`.
struct Cone {
  Torus_point apex;
  double apex_time;
  double speed;
};

inline auto in_cone(const Torus_point& site, double query_time, const Cone& cone, double side) -> bool {
  if (cone.apex_time > query_time) { return false; }
  auto radius = cone.speed * (query_time - cone.apex_time);
  return torus_distance_sq(site, cone.apex, side) <= radius * radius;
}

struct Mutation_event {
  int stage;
  Torus_point location;
  double time;
};

struct Volume_estimate {
  double estimate;
  double std_error;
};

// Monte Carlo estimate of the volume covered at time t by the union of the
// cones of `events`: N times the fraction of `n_samples` uniform points that
// fall in at least one cone.  Events born after t do not contribute.
auto hit_test_volume(std::span<const Mutation_event> events, double t, double alpha,
                     const Torus& torus, std::int64_t n_samples, Rng& rng) -> Volume_estimate;

}  // namespace mutclock
