#ifndef PPA_GEOMETRY_HPP
#define PPA_GEOMETRY_HPP

#include "ppa/numeric.hpp"
#include "ppa/ratefn.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ppa {

// A point of a finite-dimensional space. Coordinates are always finite.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);
  static Point zeros(std::size_t dimension);

  std::size_t dimension() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

// A CAT(0) space, seen only through its metric and its geodesics. Every
// other module goes through distance() and combine(); Euclidean space is the
// only instance shipped.
class SpaceInstance {
 public:
  enum class Kind { euclidean };

  explicit SpaceInstance(std::size_t dimension, Kind kind = Kind::euclidean);

  std::size_t dimension() const noexcept { return dimension_; }
  Kind kind() const noexcept { return kind_; }

  double distance(const Point& x, const Point& y) const;
  // The point at fraction t of the geodesic from x to w.
  Point combine(const Point& x, const Point& w, double t) const;

  // Throws DimensionMismatch unless p lives in this space.
  void check(const Point& p) const;

  friend bool operator==(const SpaceInstance&, const SpaceInstance&) = default;

 private:
  std::size_t dimension_;
  Kind kind_;
};

// Least p/q with q <= 16 and (p/q)^2 >= dimension.
Rational sqrt_upper_bound(std::size_t dimension);

// Modulus of total boundedness for the closed Euclidean ball of radius b:
// alpha(k) = ceil(2 b (k+1) sigma)^dimension. The ball sits in a cube cut
// into that many cells of diameter <= 1/(k+1), so among alpha(k)+1 points of
// the ball two share a cell.
RateFn ball_total_boundedness_modulus(std::size_t dimension, const Rational& b);
RateFn ball_total_boundedness_modulus(std::size_t dimension, const Rational& b,
                                      const Rational& sigma);

}  // namespace ppa

#endif  // PPA_GEOMETRY_HPP
