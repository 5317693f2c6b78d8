#ifndef PPA_OBJECTIVE_HPP
#define PPA_OBJECTIVE_HPP

#include "ppa/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ppa {

// A value in (-inf, +inf].
class ExtendedReal {
 public:
  ExtendedReal(double v);  // NOLINT(google-explicit-constructor)
  static ExtendedReal infinity() noexcept;

  bool is_finite() const noexcept { return !infinite_; }
  // +inf for the infinite value.
  double value() const noexcept;

  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) = default;

 private:
  ExtendedReal() = default;
  double value_ = 0.0;
  bool infinite_ = false;
};

namespace objectives {

// f(y) = (w/2) |y - a|^2
struct Quadratic {
  Point anchor;
  double weight;
};

// f(y) = c |y|_1
struct L1Norm {
  double scale;
};

struct BallIndicator {
  Point center;
  double radius;
};

struct BoxIndicator {
  Point lower;
  Point upper;
};

// Differentiable convex f with an L-Lipschitz gradient. `family` and
// `parameters` identify the function when it is serialized.
struct SmoothCustom {
  std::string family;
  nlohmann::json parameters;
  std::function<double(const Point&)> value;
  std::function<std::vector<double>(const Point&)> gradient;
  double lipschitz;
};

}  // namespace objectives

using ObjectiveSpec =
    std::variant<objectives::Quadratic, objectives::L1Norm,
                 objectives::BallIndicator, objectives::BoxIndicator,
                 objectives::SmoothCustom>;

// Settings of the gradient-descent prox solver used for SmoothCustom.
struct InnerSolverSettings {
  double displacement_tolerance = 1e-12;
  std::uint64_t max_iterations = 1'000'000;
};

// A convex, lsc, proper function together with the minimum value and,
// when known, one minimizer.
class Objective {
 public:
  Objective(std::size_t dimension, ObjectiveSpec spec, double known_min_value,
            std::optional<Point> known_minimizer);

  static Objective quadratic(Point anchor, double weight);
  static Objective l1_norm(std::size_t dimension, double scale);
  static Objective ball_indicator(Point center, double radius);
  static Objective box_indicator(Point lower, Point upper);
  // Sum of Huber losses of (y - a) with threshold delta.
  static Objective huber(Point anchor, double delta);
  // Sum of log cosh(y_i - a_i).
  static Objective log_cosh(Point anchor);

  std::size_t dimension() const noexcept { return dimension_; }
  const ObjectiveSpec& spec() const noexcept { return spec_; }
  double known_min_value() const noexcept { return known_min_value_; }
  const std::optional<Point>& known_minimizer() const noexcept {
    return known_minimizer_;
  }
  std::string kind_name() const;

  ExtendedReal evaluate(const Point& y) const;

  // argmin_y f(y) + d^2(x, y) / (2 gamma).
  Point resolvent(double gamma, const Point& x,
                  const InnerSolverSettings& settings = {}) const;

 private:
  std::size_t dimension_;
  ObjectiveSpec spec_;
  double known_min_value_;
  std::optional<Point> known_minimizer_;
};

// Brute-force optimality check for a claimed resolvent output y: the prox
// objective at y must not exceed its value (plus 1e-8) at `samples` random
// points of the ball of radius 2 d(x, y) + 1 around x, nor at 100 grid points
// on the geodesic from y to each of them. Deterministic.
bool prox_certificate(const Objective& f, double gamma, const Point& x,
                      const Point& y, std::uint32_t samples);

}  // namespace ppa

#endif  // PPA_OBJECTIVE_HPP
