#include <doctest.h>

#include "ppa/error.hpp"
#include "ppa/geometry.hpp"

#include <cmath>
#include <random>

using namespace ppa;

namespace {

Point random_point(std::size_t dim, std::mt19937_64& rng, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> c(dim);
  for (auto& x : c) x = u(rng);
  return Point(std::move(c));
}

// Uniform in the closed ball of radius b; every fourth point on the sphere.
Point ball_point(std::size_t dim, double b, std::mt19937_64& rng, int i) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(dim);
  double n2 = 0.0;
  for (auto& x : c) {
    x = g(rng);
    n2 += x * x;
  }
  const double r = (i % 4 == 0) ? b : b * std::pow(u(rng), 1.0 / static_cast<double>(dim));
  for (auto& x : c) x *= r / std::sqrt(n2);
  return Point(std::move(c));
}

}  // namespace

TEST_CASE("distance examples") {
  const SpaceInstance plane(2);
  CHECK(plane.distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(plane.distance({1.0, 1.0}, {1.0, 1.0}) == 0.0);
  const SpaceInstance line(1);
  CHECK(line.distance({0.0}, {-2.0}) == 2.0);
  CHECK_THROWS_AS(plane.distance({0.0}, {1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("points reject non-finite coordinates") {
  CHECK_THROWS_AS(Point({1.0, NAN}), InvalidArgument);
  CHECK_THROWS_AS(Point({INFINITY}), InvalidArgument);
  CHECK_THROWS_AS(SpaceInstance(0), InvalidArgument);
}

TEST_CASE("combine examples") {
  const SpaceInstance plane(2);
  CHECK(plane.combine({0.0, 0.0}, {2.0, 0.0}, 0.5) == Point({1.0, 0.0}));
  CHECK(plane.combine({0.0, 0.0}, {4.0, 4.0}, 0.25) == Point({1.0, 1.0}));
  const Point x{3.0, -1.0};
  CHECK(plane.combine(x, {7.0, 7.0}, 0.0) == x);
  CHECK_THROWS_AS(plane.combine(x, x, 1.5), InvalidArgument);
  CHECK_THROWS_AS(plane.combine(x, x, -0.1), InvalidArgument);
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(11);
  for (std::size_t dim : {1u, 2u, 5u}) {
    const SpaceInstance s(dim);
    for (int t = 0; t < 10000 / 3 + 1; ++t) {
      const Point x = random_point(dim, rng), y = random_point(dim, rng), z = random_point(dim, rng);
      CHECK(s.distance(x, x) <= 1e-12);
      CHECK(std::abs(s.distance(x, y) - s.distance(y, x)) <= 1e-12);
      CHECK(s.distance(x, z) <= s.distance(x, y) + s.distance(y, z) + 1e-12);
      CHECK(s.distance(x, y) >= 0.0);
    }
  }
}

TEST_CASE("geodesic identities on random pairs") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  const SpaceInstance s(3);
  for (int i = 0; i < 10000; ++i) {
    const Point x = random_point(3, rng), w = random_point(3, rng);
    const double t = ut(rng);
    const Point m = s.combine(x, w, t);
    const double d = s.distance(x, w);
    CHECK(std::abs(s.distance(x, m) - t * d) <= 1e-12 * (1.0 + d));
    CHECK(std::abs(s.distance(m, w) - (1.0 - t) * d) <= 1e-12 * (1.0 + d));
  }
}

TEST_CASE("square root upper bound") {
  for (std::size_t d = 1; d <= 12; ++d) {
    const Rational s = sqrt_upper_bound(d);
    CHECK(s * s >= d);
  }
  CHECK(sqrt_upper_bound(1) == 1);
  CHECK(sqrt_upper_bound(4) == 2);
}

TEST_CASE("ball modulus examples") {
  CHECK(ball_total_boundedness_modulus(1, Rational(1))(Nat(0)) == 2);
  CHECK(ball_total_boundedness_modulus(2, Rational(1), Rational(3, 2))(Nat(0)) == 9);
  // ceil(2 * 17/12) = 3 with the default bound as well.
  CHECK(ball_total_boundedness_modulus(2, Rational(1))(Nat(0)) == 9);
  CHECK(ball_total_boundedness_modulus(1, Rational(2))(Nat(3)) == 16);
  CHECK_THROWS_AS(ball_total_boundedness_modulus(2, Rational(0)), InvalidArgument);
  // Exact at any k.
  const Nat big = ball_total_boundedness_modulus(3, Rational(5))(Nat("1000000000000000000000"));
  CHECK(bit_length(big) > 200);
}

TEST_CASE("ball modulus pigeonhole oracle") {
  std::mt19937_64 rng(13);
  struct Case {
    std::size_t dim;
    Rational b;
    unsigned k;
  };
  const Case cases[] = {{1, Rational(1), 0}, {1, Rational(3, 2), 2}, {2, Rational(1), 0},
                        {2, Rational(1), 1}, {2, Rational(1, 2), 3}, {3, Rational(1, 2), 0}};
  int trials = 0;
  for (const auto& c : cases) {
    const SpaceInstance s(c.dim);
    const auto alpha = ball_total_boundedness_modulus(c.dim, c.b)(Nat(c.k)).convert_to<std::size_t>();
    const double eps = 1.0 / (c.k + 1.0);
    for (int t = 0; t < 1000 / 6 + 1; ++t, ++trials) {
      std::vector<Point> pts;
      for (std::size_t i = 0; i <= alpha; ++i) pts.push_back(ball_point(c.dim, to_double(c.b), rng, static_cast<int>(i)));
      bool close_pair = false;
      for (std::size_t i = 0; i < pts.size() && !close_pair; ++i)
        for (std::size_t j = i + 1; j < pts.size() && !close_pair; ++j)
          close_pair = s.distance(pts[i], pts[j]) <= eps;
      CHECK(close_pair);
    }
  }
  CHECK(trials >= 1000);
}
