#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "nearplane/errors.hpp"
#include "nearplane/lattice.hpp"
#include "test_support.hpp"

using namespace nearplane;
using namespace nearplane::testing;

TEST_CASE("make_generator builds the upper-triangular basis") {
  const Generator g = make_generator(kRef);
  CHECK(g.v1().x1 == 1.0);
  CHECK(g.v1().x2 == 0.0);
  CHECK(g.v2().x1 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(g.v2().x2 == doctest::Approx(0.95394).epsilon(1e-5));
  CHECK(g.det() == doctest::Approx(std::sqrt(1 - 0.09)).epsilon(1e-12));
}

TEST_CASE("make_generator rejects parameters outside the reduced range") {
  CHECK_THROWS_AS(make_generator({0.9, std::numbers::pi / 2 - 0.1}), InvalidParams);
  CHECK_THROWS_AS(make_generator({1.0, std::numbers::pi / 4}), InvalidParams);
  CHECK_THROWS_AS(make_generator({1.0, 1.2 * std::numbers::pi}), InvalidParams);
  CHECK_NOTHROW(make_generator({1.0, std::numbers::pi / 3 + 1e-6}));
  CHECK_THROWS_AS(make_generator({1.0, std::nan("")}), InvalidParams);
}

TEST_CASE("babai_nearest_plane worked examples") {
  const Generator g(kRef);
  CHECK(babai_nearest_plane({0, 0}, g) == IntegerPair{0, 0});
  CHECK(babai_nearest_plane({0.8, 1.5}, g) == IntegerPair{0, 2});
  CHECK(babai_nearest_plane({0.45, 0.45}, g) == IntegerPair{0, 0});
}

TEST_CASE("babai residual lies in the half-open Babai cell") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-10, 10);
  for (int p = 0; p < 20; ++p) {
    const Generator g(random_params(rng));
    const double half_h = g.det() / 2;
    for (int i = 0; i < 500; ++i) {
      const Point2 x{coord(rng), coord(rng)};
      const Point2 lp = g.point(babai_nearest_plane(x, g));
      const double r1 = x.x1 - lp.x1;
      const double r2 = x.x2 - lp.x2;
      CHECK(r1 > -0.5 - 1e-12);
      CHECK(r1 <= 0.5 + 1e-12);
      CHECK(r2 > -half_h - 1e-12);
      CHECK(r2 <= half_h + 1e-12);
    }
  }
  // Ties sit on the closed side of the half-open cell.
  const Generator g(kRef);
  CHECK(babai_nearest_plane({0.5, 0.0}, g) == IntegerPair{0, 0});
  CHECK(babai_nearest_plane({-0.5, 0.0}, g) == IntegerPair{-1, 0});
}

TEST_CASE("exact_nearest_point worked examples") {
  const Generator g(kRef);
  CHECK(exact_nearest_point({0, 0}, g) == IntegerPair{0, 0});
  CHECK(exact_nearest_point({0.45, 0.45}, g) == IntegerPair{0, 1});
  CHECK(squared_distance({0.45, 0.45}, g.point({0, 0})) == doctest::Approx(0.405));
  CHECK(squared_distance({0.45, 0.45}, g.point({0, 1})) == doctest::Approx(0.27646).epsilon(1e-4));
  CHECK(exact_nearest_point({0.8, 1.5}, g) == IntegerPair{0, 2});
}

TEST_CASE("exact_nearest_point is never farther than the Babai point") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> coord(-5, 5);
  for (int p = 0; p < 20; ++p) {
    const Generator g(random_params(rng));
    for (int i = 0; i < 500; ++i) {
      const Point2 x{coord(rng), coord(rng)};
      CHECK(squared_distance(x, g.point(exact_nearest_point(x, g))) <=
            squared_distance(x, g.point(babai_nearest_plane(x, g))));
    }
  }
}

TEST_CASE("inside B(0) the exact point is the origin or a neighbour above/below") {
  const std::set<IntegerPair> allowed = {{0, 0}, {0, 1}, {0, -1}, {-1, 1}, {1, -1}};
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int p = 0; p < 20; ++p) {
    const Generator g(random_params(rng));
    for (int i = 0; i < 1000; ++i) {
      const Point2 x{u(rng), g.det() * u(rng)};
      CHECK(allowed.count(exact_nearest_point(x, g)) == 1);
    }
  }
}

TEST_CASE("relevant_vectors are closed under negation with the expected norms") {
  const Generator g(kRef);
  const auto rv = relevant_vectors(g);
  std::set<IntegerPair> set(rv.begin(), rv.end());
  CHECK(set.size() == 6);
  for (const auto& r : rv) CHECK(set.count(-r) == 1);
  std::vector<double> norms;
  for (const auto& r : rv) {
    const Point2 p = g.point(r);
    norms.push_back(dot(p, p));
  }
  std::sort(norms.begin(), norms.end());
  CHECK(norms[0] == doctest::Approx(1.0));
  CHECK(norms[1] == doctest::Approx(1.0));
  CHECK(norms[2] == doctest::Approx(1.0));
  CHECK(norms[3] == doctest::Approx(1.0));
  CHECK(norms[4] == doctest::Approx(1.4));
  CHECK(norms[5] == doctest::Approx(1.4));
}

TEST_CASE("in_voronoi_cell agrees with the brute-force nearest point") {
  const Generator ref(kRef);
  CHECK(in_voronoi_cell({0, 0}, ref));
  CHECK_FALSE(in_voronoi_cell({0.45, 0.45}, ref));
  CHECK(dot({0.45, 0.45}, ref.v2()) == doctest::Approx(0.56427).epsilon(1e-4));

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  int disagreements = 0;
  for (int p = 0; p < 10; ++p) {
    const Generator g(random_params(rng));
    for (int i = 0; i < 1000; ++i) {
      const Point2 x{coord(rng), coord(rng)};
      if (in_voronoi_cell(x, g) != (exact_nearest_point(x, g) == IntegerPair{0, 0})) ++disagreements;
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("exact_nearest_point matches an 11x11 brute force far from the origin") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> coord(-3, 3);
  for (int p = 0; p < 5; ++p) {
    const Generator g(random_params(rng));
    for (int i = 0; i < 2000; ++i) {
      const Point2 x{coord(rng), coord(rng)};
      IntegerPair best{0, 0};
      double best_d = 1e300;
      for (long u2 = -5; u2 <= 5; ++u2) {
        for (long u1 = -5; u1 <= 5; ++u1) {
          const double d = squared_distance(x, g.point({u1, u2}));
          if (d < best_d) {
            best_d = d;
            best = {u1, u2};
          }
        }
      }
      CHECK(exact_nearest_point(x, g) == best);
    }
  }
}
