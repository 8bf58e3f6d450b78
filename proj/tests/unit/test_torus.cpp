#include "mutclock/torus.h"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace mutclock;

TEST_CASE("torus distance uses the wraparound metric") {
  CHECK(torus_distance(Torus_point{{1.0}, 10.0}, Torus_point{{9.0}, 10.0}, 10.0) == doctest::Approx(2.0));
  CHECK(torus_distance(Torus_point{{0.0, 0.0}, 1.0}, Torus_point{{0.5, 0.5}, 1.0}, 1.0) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(torus_distance(Torus_point{{3.0}, 10.0}, Torus_point{{3.0}, 10.0}, 10.0) == 0.0);
}

TEST_CASE("torus distance rejects mismatched dimensions") {
  CHECK_THROWS_AS(torus_distance(Torus_point{{1.0}, 10.0}, Torus_point{{1.0, 2.0}, 10.0}, 10.0),
                  std::invalid_argument);
}

TEST_CASE("points are reduced to [0, L)") {
  auto p = Torus_point{{-1.0, 10.0, 23.5}, 10.0};
  CHECK(p[0] == doctest::Approx(9.0));
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(3.5));
  for (auto i = 0; i != p.dim(); ++i) {
    CHECK(p[i] >= 0.0);
    CHECK(p[i] < 10.0);
  }
  // A tiny negative coordinate rounds to L and must wrap to 0.
  auto q = Torus_point{{-1e-18}, 10.0};
  CHECK(q[0] >= 0.0);
  CHECK(q[0] < 10.0);
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
  CHECK_THROWS(unit_ball_volume(0));
}

TEST_CASE("cone membership") {
  auto cone = Cone{Torus_point{{0.0}, 10.0}, 0.0, 1.0};
  CHECK(in_cone(Torus_point{{0.5}, 10.0}, 0.6, cone, 10.0));
  CHECK_FALSE(in_cone(Torus_point{{0.5}, 10.0}, 0.4, cone, 10.0));
  auto wrap = Cone{Torus_point{{9.0}, 10.0}, 0.0, 1.0};
  CHECK(in_cone(Torus_point{{1.0}, 10.0}, 2.5, wrap, 10.0));
  // Nothing is covered before the apex time, not even the apex.
  auto late = Cone{Torus_point{{4.0}, 10.0}, 3.0, 1.0};
  CHECK_FALSE(in_cone(Torus_point{{4.0}, 10.0}, 2.999, late, 10.0));
  CHECK(in_cone(Torus_point{{4.0}, 10.0}, 3.0, late, 10.0));
}

TEST_CASE("metric properties on random triples") {
  auto rng = make_rng(42);
  for (auto d = 1; d <= 4; ++d) {
    auto torus = Torus{d, 3.0};
    for (auto i = 0; i != 2000; ++i) {
      auto x = torus.random_point(rng);
      auto y = torus.random_point(rng);
      auto z = torus.random_point(rng);
      auto xy = torus_distance(x, y, torus.side);
      CHECK(xy == doctest::Approx(torus_distance(y, x, torus.side)));
      CHECK(xy <= torus.diameter() + 1e-12);
      CHECK(torus_distance(x, z, torus.side) <= xy + torus_distance(y, z, torus.side) + 1e-12);
    }
  }
}

TEST_CASE("cone membership is monotone in time") {
  auto rng = make_rng(7);
  auto torus = Torus{2, 5.0};
  for (auto i = 0; i != 2000; ++i) {
    auto cone = Cone{torus.random_point(rng), 3.0 * uniform01(rng), 0.5 + uniform01(rng)};
    auto x = torus.random_point(rng);
    auto t = 6.0 * uniform01(rng);
    if (in_cone(x, t, cone, torus.side)) {
      CHECK(in_cone(x, t + 0.1, cone, torus.side));
      CHECK(in_cone(x, t + 10.0, cone, torus.side));
    }
  }
}

TEST_CASE("hit-test volume estimates") {
  auto torus = Torus{1, 10.0};
  auto rng = make_rng(3);
  SUBCASE("no events") {
    auto v = hit_test_volume({}, 5.0, 1.0, torus, 100, rng);
    CHECK(v.estimate == 0.0);
    CHECK(v.std_error == 0.0);
  }
  SUBCASE("single ball of length 2") {
    auto events = std::vector<Mutation_event>{{1, Torus_point{{5.0}, 10.0}, 0.0}};
    auto v = hit_test_volume(events, 1.0, 1.0, torus, 100'000, rng);
    CHECK(std::abs(v.estimate - 2.0) <= 3.0 * v.std_error);
  }
  SUBCASE("duplicate events cover the same set") {
    auto one = std::vector<Mutation_event>{{1, Torus_point{{5.0}, 10.0}, 0.0}};
    auto two = one;
    two.push_back(one.front());
    auto rng_a = make_rng(11);
    auto rng_b = make_rng(11);
    CHECK(hit_test_volume(one, 1.0, 1.0, torus, 10'000, rng_a).estimate ==
          hit_test_volume(two, 1.0, 1.0, torus, 10'000, rng_b).estimate);
  }
  SUBCASE("rejects a non-positive sample count") {
    auto events = std::vector<Mutation_event>{{1, Torus_point{{5.0}, 10.0}, 0.0}};
    CHECK_THROWS_AS(hit_test_volume(events, 1.0, 1.0, torus, 0, rng), std::invalid_argument);
  }
}

TEST_CASE("single-ball estimate converges as samples grow") {
  for (auto d = 1; d <= 3; ++d) {
    auto torus = Torus::from_volume(d, 1000.0);
    auto centre = std::vector<double>(static_cast<std::size_t>(d), 1.0);
    auto events = std::vector<Mutation_event>{{1, torus.point(centre), 0.0}};
    auto alpha = 0.7;
    auto t = 2.0;
    auto exact = unit_ball_volume(d) * std::pow(alpha * t, d);
    auto rng = make_rng(100 + static_cast<std::uint64_t>(d));
    for (auto n : {10'000, 100'000, 1'000'000}) {
      auto v = hit_test_volume(events, t, alpha, torus, n, rng);
      CHECK(std::abs(v.estimate - exact) <= 4.0 * v.std_error);
    }
  }
}

TEST_CASE("volume helpers") {
  auto t = Torus::from_volume(2, 100.0);
  CHECK(t.side == doctest::Approx(10.0));
  CHECK(t.volume() == doctest::Approx(100.0));
  CHECK(t.diameter() == doctest::Approx(std::sqrt(2.0) * 5.0));
  CHECK_THROWS(Torus::from_volume(0, 1.0));
  CHECK_THROWS(Torus::from_volume(1, -1.0));
}
