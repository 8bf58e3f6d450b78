#include "mutclock/torus.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mutclock {

Torus_point::Torus_point(std::span<const double> coords, double side)
    : dim_{static_cast<int>(coords.size())} {
  if (coords.empty() || coords.size() > static_cast<std::size_t>(k_max_dimension)) {
    throw std::invalid_argument("torus point dimension must be in [1, " +
                                std::to_string(k_max_dimension) + "]");
  }
  if (!(side > 0.0)) { throw std::invalid_argument("torus side must be positive"); }
  for (auto i = std::size_t{0}; i != coords.size(); ++i) {
    auto c = std::fmod(coords[i], side);
    if (c < 0.0) { c += side; }
    if (c >= side) { c = 0.0; }  // fmod(-tiny, L) + L rounds up to L
    coords_[i] = c;
  }
}

auto Torus::from_volume(int dim, double volume) -> Torus {
  if (dim < 1 || dim > k_max_dimension) {
    throw std::invalid_argument("torus dimension out of range: " + std::to_string(dim));
  }
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw std::invalid_argument("torus volume must be positive and finite");
  }
  auto side = dim == 1 ? volume : std::pow(volume, 1.0 / dim);
  return Torus{dim, side};
}

auto Torus::volume() const -> double { return std::pow(side, dim); }

auto Torus::random_point(Rng& rng) const -> Torus_point {
  auto coords = std::array<double, k_max_dimension>{};
  for (auto i = 0; i != dim; ++i) { coords[static_cast<std::size_t>(i)] = side * uniform01(rng); }
  return Torus_point{std::span<const double>{coords.data(), static_cast<std::size_t>(dim)}, side};
}

auto Torus::diameter() const -> double { return 0.5 * std::sqrt(static_cast<double>(dim)) * side; }

auto torus_distance(const Torus_point& x, const Torus_point& y, double side) -> double {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("torus_distance: dimension mismatch (" + std::to_string(x.dim()) +
                                " vs " + std::to_string(y.dim()) + ")");
  }
  if (!(side > 0.0)) { throw std::invalid_argument("torus_distance: side must be positive"); }
  return std::sqrt(torus_distance_sq(x, y, side));
}

auto unit_ball_volume(int d) -> double {
  if (d < 1) { throw std::invalid_argument("unit_ball_volume: d must be >= 1"); }
  auto half = 0.5 * d;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

auto hit_test_volume(std::span<const Mutation_event> events, double t, double alpha,
                     const Torus& torus, std::int64_t n_samples, Rng& rng) -> Volume_estimate {
  if (n_samples < 1) { throw std::invalid_argument("hit_test_volume: n_samples must be >= 1"); }
  if (events.empty()) { return {0.0, 0.0}; }

  // Only cones that have started by t matter; precompute squared radii.
  struct Live_cone {
    const Torus_point* apex;
    double radius_sq;
  };
  auto live = std::vector<Live_cone>{};
  live.reserve(events.size());
  for (const auto& ev : events) {
    if (ev.time <= t) {
      auto r = alpha * (t - ev.time);
      live.push_back({&ev.location, r * r});
    }
  }

  auto hits = std::int64_t{0};
  for (auto s = std::int64_t{0}; s != n_samples; ++s) {
    auto x = torus.random_point(rng);
    for (const auto& c : live) {
      if (torus_distance_sq(x, *c.apex, torus.side) <= c.radius_sq) {
        ++hits;
        break;
      }
    }
  }

  auto n = static_cast<double>(n_samples);
  auto p = static_cast<double>(hits) / n;
  auto vol = torus.volume();
  return {vol * p, vol * std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace mutclock
