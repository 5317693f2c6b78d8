#include "ppa/geometry.hpp"

#include "ppa/error.hpp"

#include <cmath>

namespace ppa {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("points need dimension >= 1");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InvalidArgument("point coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t dimension) {
  return Point(std::vector<double>(dimension, 0.0));
}

SpaceInstance::SpaceInstance(std::size_t dimension, Kind kind)
    : dimension_(dimension), kind_(kind) {
  if (dimension == 0) throw InvalidArgument("space dimension must be positive");
}

void SpaceInstance::check(const Point& p) const {
  if (p.dimension() != dimension_) throw DimensionMismatch(dimension_, p.dimension());
}

double SpaceInstance::distance(const Point& x, const Point& y) const {
  check(x);
  check(y);
  double sum = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Point SpaceInstance::combine(const Point& x, const Point& w, double t) const {
  check(x);
  check(w);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidArgument("geodesic parameter t must lie in [0, 1]");
  }
  std::vector<double> out(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) {
    out[i] = (1.0 - t) * x[i] + t * w[i];
  }
  return Point(std::move(out));
}

Rational sqrt_upper_bound(std::size_t dimension) {
  if (dimension == 0) throw InvalidArgument("dimension must be positive");
  const Nat d(dimension);
  Rational best;
  bool have = false;
  for (unsigned q = 1; q <= 16; ++q) {
    const Nat p = isqrt_ceil(d * q * q);
    Rational candidate(p, Nat(q));
    if (!have || candidate < best) {
      best = candidate;
      have = true;
    }
  }
  return best;
}

RateFn ball_total_boundedness_modulus(std::size_t dimension, const Rational& b,
                                      const Rational& sigma) {
  if (b <= 0) throw InvalidArgument("ball radius b must be positive");
  if (dimension == 0) throw InvalidArgument("dimension must be positive");
  if (sigma * sigma < Rational(dimension)) {
    throw InvalidArgument("sigma must satisfy sigma^2 >= dimension");
  }
  // R(k) = ceil(2 b sigma (k+1)), alpha(k) = R(k)^dimension.
  const RateFn cells_per_axis = RateFn::ceil(
      RateFn::constant(2 * b * sigma) * (RateFn::variable() + RateFn::constant(1)));
  return RateFn::power(cells_per_axis,
                       RateFn::constant(static_cast<std::int64_t>(dimension)));
}

RateFn ball_total_boundedness_modulus(std::size_t dimension, const Rational& b) {
  return ball_total_boundedness_modulus(dimension, b, sqrt_upper_bound(dimension));
}

}  // namespace ppa
