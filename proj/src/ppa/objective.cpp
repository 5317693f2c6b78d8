#include "ppa/objective.hpp"

#include "ppa/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ppa {

ExtendedReal::ExtendedReal(double v) : value_(v) {
  if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
    throw InvalidArgument("extended reals are finite or +inf");
  }
  infinite_ = std::isinf(v);
}

ExtendedReal ExtendedReal::infinity() noexcept {
  ExtendedReal r;
  r.value_ = std::numeric_limits<double>::infinity();
  r.infinite_ = true;
  return r;
}

double ExtendedReal::value() const noexcept { return value_; }

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinite_ || b.infinite_) return ExtendedReal::infinity();
  return ExtendedReal(a.value_ + b.value_);
}

bool operator<=(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.infinite_) return true;
  if (a.infinite_) return false;
  return a.value_ <= b.value_;
}

namespace {

using namespace objectives;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

double huber_loss(double t, double delta) {
  const double a = std::abs(t);
  return a <= delta ? 0.5 * t * t : delta * (a - 0.5 * delta);
}

double log_cosh(double t) {
  const double a = std::abs(t);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

Point project_ball(const BallIndicator& ball, const Point& x) {
  const auto n = x.dimension();
  double dist2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - ball.center[i];
    dist2 += d * d;
  }
  const double dist = std::sqrt(dist2);
  if (dist <= ball.radius) return x;
  const double scale = ball.radius / dist;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ball.center[i] + scale * (x[i] - ball.center[i]);
  }
  return Point(std::move(out));
}

Point gradient_prox(const SmoothCustom& f, double gamma, const Point& x,
                    const InnerSolverSettings& settings) {
  const auto n = x.dimension();
  const double step = 1.0 / (f.lipschitz + 1.0 / gamma);
  std::vector<double> y(x.coords().begin(), x.coords().end());
  double displacement = std::numeric_limits<double>::infinity();
  for (std::uint64_t it = 0; it < settings.max_iterations; ++it) {
    const auto grad = f.gradient(Point(y));
    double moved2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = -step * (grad[i] + (y[i] - x[i]) / gamma);
      y[i] += delta;
      moved2 += delta * delta;
    }
    displacement = std::sqrt(moved2);
    if (!std::isfinite(displacement)) throw SolverDivergence(displacement, it + 1);
    if (displacement < settings.displacement_tolerance) return Point(std::move(y));
  }
  throw SolverDivergence(displacement, settings.max_iterations);
}

}  // namespace

Objective::Objective(std::size_t dimension, ObjectiveSpec spec,
                     double known_min_value, std::optional<Point> known_minimizer)
    : dimension_(dimension),
      spec_(std::move(spec)),
      known_min_value_(known_min_value),
      known_minimizer_(std::move(known_minimizer)) {
  if (dimension == 0) throw InvalidArgument("objective dimension must be positive");
  if (!std::isfinite(known_min_value)) {
    throw InvalidArgument("known_min_value must be finite");
  }
  auto same_dim = [&](const Point& p) {
    if (p.dimension() != dimension_) throw DimensionMismatch(dimension_, p.dimension());
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          same_dim(s.anchor);
          require_positive(s.weight, "quadratic weight");
        } else if constexpr (std::is_same_v<T, L1Norm>) {
          require_positive(s.scale, "l1 scale");
        } else if constexpr (std::is_same_v<T, BallIndicator>) {
          same_dim(s.center);
          require_positive(s.radius, "ball radius");
        } else if constexpr (std::is_same_v<T, BoxIndicator>) {
          same_dim(s.lower);
          same_dim(s.upper);
          for (std::size_t i = 0; i < dimension_; ++i) {
            if (s.lower[i] > s.upper[i]) {
              throw InvalidArgument("box lower bound exceeds upper bound");
            }
          }
        } else {
          require_positive(s.lipschitz, "gradient Lipschitz constant");
          if (!s.value || !s.gradient) {
            throw InvalidArgument("smooth objective needs value and gradient oracles");
          }
        }
      },
      spec_);
  if (known_minimizer_) {
    same_dim(*known_minimizer_);
    const ExtendedReal at_min = evaluate(*known_minimizer_);
    if (!at_min.is_finite() || std::abs(at_min.value() - known_min_value_) > 1e-10) {
      throw InvalidArgument("known_minimizer does not attain known_min_value");
    }
  }
}

Objective Objective::quadratic(Point anchor, double weight) {
  const auto n = anchor.dimension();
  Point minimizer = anchor;
  return Objective(n, Quadratic{std::move(anchor), weight}, 0.0, std::move(minimizer));
}

Objective Objective::l1_norm(std::size_t dimension, double scale) {
  return Objective(dimension, L1Norm{scale}, 0.0, Point::zeros(dimension));
}

Objective Objective::ball_indicator(Point center, double radius) {
  const auto n = center.dimension();
  Point minimizer = center;
  return Objective(n, BallIndicator{std::move(center), radius}, 0.0,
                   std::move(minimizer));
}

Objective Objective::box_indicator(Point lower, Point upper) {
  const auto n = lower.dimension();
  if (upper.dimension() != n) throw DimensionMismatch(n, upper.dimension());
  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (lower[i] + upper[i]);
  return Objective(n, BoxIndicator{std::move(lower), std::move(upper)}, 0.0,
                   Point(std::move(mid)));
}

Objective Objective::huber(Point anchor, double delta) {
  require_positive(delta, "huber delta");
  const auto n = anchor.dimension();
  SmoothCustom s;
  s.family = "huber";
  s.parameters = {{"anchor", std::vector<double>(anchor.coords().begin(), anchor.coords().end())},
                  {"delta", delta}};
  s.value = [anchor, delta](const Point& y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < y.dimension(); ++i) sum += huber_loss(y[i] - anchor[i], delta);
    return sum;
  };
  s.gradient = [anchor, delta](const Point& y) {
    std::vector<double> g(y.dimension());
    for (std::size_t i = 0; i < y.dimension(); ++i) {
      g[i] = std::clamp(y[i] - anchor[i], -delta, delta);
    }
    return g;
  };
  s.lipschitz = 1.0;
  Point minimizer = anchor;
  return Objective(n, std::move(s), 0.0, std::move(minimizer));
}

Objective Objective::log_cosh(Point anchor) {
  const auto n = anchor.dimension();
  SmoothCustom s;
  s.family = "log_cosh";
  s.parameters = {{"anchor", std::vector<double>(anchor.coords().begin(), anchor.coords().end())}};
  s.value = [anchor](const Point& y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < y.dimension(); ++i) sum += ppa::log_cosh(y[i] - anchor[i]);
    return sum;
  };
  s.gradient = [anchor](const Point& y) {
    std::vector<double> g(y.dimension());
    for (std::size_t i = 0; i < y.dimension(); ++i) g[i] = std::tanh(y[i] - anchor[i]);
    return g;
  };
  s.lipschitz = 1.0;
  Point minimizer = anchor;
  return Objective(n, std::move(s), 0.0, std::move(minimizer));
}

std::string Objective::kind_name() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Quadratic>) return "quadratic";
        else if constexpr (std::is_same_v<T, L1Norm>) return "l1_norm";
        else if constexpr (std::is_same_v<T, BallIndicator>) return "ball_indicator";
        else if constexpr (std::is_same_v<T, BoxIndicator>) return "box_indicator";
        else return "smooth_custom";
      },
      spec_);
}

ExtendedReal Objective::evaluate(const Point& y) const {
  if (y.dimension() != dimension_) throw DimensionMismatch(dimension_, y.dimension());
  return std::visit(
      [&](const auto& s) -> ExtendedReal {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          double sum = 0.0;
          for (std::size_t i = 0; i < dimension_; ++i) {
            const double d = y[i] - s.anchor[i];
            sum += d * d;
          }
          return 0.5 * s.weight * sum;
        } else if constexpr (std::is_same_v<T, L1Norm>) {
          double sum = 0.0;
          for (double c : y.coords()) sum += std::abs(c);
          return s.scale * sum;
        } else if constexpr (std::is_same_v<T, BallIndicator>) {
          double dist2 = 0.0;
          for (std::size_t i = 0; i < dimension_; ++i) {
            const double d = y[i] - s.center[i];
            dist2 += d * d;
          }
          // Projections land on the sphere only up to rounding.
          return std::sqrt(dist2) <= s.radius * (1.0 + 1e-12) ? ExtendedReal(0.0)
                                              : ExtendedReal::infinity();
        } else if constexpr (std::is_same_v<T, BoxIndicator>) {
          for (std::size_t i = 0; i < dimension_; ++i) {
            if (y[i] < s.lower[i] || y[i] > s.upper[i]) return ExtendedReal::infinity();
          }
          return 0.0;
        } else {
          return s.value(y);
        }
      },
      spec_);
}

Point Objective::resolvent(double gamma, const Point& x,
                           const InnerSolverSettings& settings) const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("resolvent order gamma must be positive");
  }
  if (x.dimension() != dimension_) throw DimensionMismatch(dimension_, x.dimension());
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        std::vector<double> out(dimension_);
        if constexpr (std::is_same_v<T, Quadratic>) {
          const double gw = gamma * s.weight;
          for (std::size_t i = 0; i < dimension_; ++i) {
            out[i] = (x[i] + gw * s.anchor[i]) / (1.0 + gw);
          }
        } else if constexpr (std::is_same_v<T, L1Norm>) {
          const double t = gamma * s.scale;
          for (std::size_t i = 0; i < dimension_; ++i) {
            const double a = std::abs(x[i]);
            out[i] = a <= t ? 0.0 : std::copysign(a - t, x[i]);
          }
        } else if constexpr (std::is_same_v<T, BallIndicator>) {
          return project_ball(s, x);
        } else if constexpr (std::is_same_v<T, BoxIndicator>) {
          for (std::size_t i = 0; i < dimension_; ++i) {
            out[i] = std::clamp(x[i], s.lower[i], s.upper[i]);
          }
        } else {
          return gradient_prox(s, gamma, x, settings);
        }
        return Point(std::move(out));
      },
      spec_);
}

bool prox_certificate(const Objective& f, double gamma, const Point& x,
                      const Point& y, std::uint32_t samples) {
  const SpaceInstance space(f.dimension());
  const auto prox_value = [&](const Point& z) {
    const double d = space.distance(x, z);
    return f.evaluate(z) + ExtendedReal(d * d / (2.0 * gamma));
  };
  const ExtendedReal at_y = prox_value(y);
  if (!at_y.is_finite()) return false;
  const ExtendedReal bar = at_y.value() - 1e-8;

  const auto n = f.dimension();
  const double radius = 2.0 * space.distance(x, y) + 1.0;
  std::mt19937_64 rng(0x5eed'cafe'f00dULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::uint32_t s = 0; s < samples; ++s) {
    std::vector<double> dir(n);
    double norm2 = 0.0;
    for (auto& c : dir) {
      c = normal(rng);
      norm2 += c * c;
    }
    const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(n)) /
                     std::sqrt(std::max(norm2, 1e-300));
    for (std::size_t i = 0; i < n; ++i) dir[i] = x[i] + r * dir[i];
    const Point z(std::move(dir));

    if (!(bar <= prox_value(z))) return false;
    for (int j = 1; j <= 100; ++j) {
      const Point w = space.combine(y, z, j / 100.0);
      if (!(bar <= prox_value(w))) return false;
    }
  }
  return true;
}

}  // namespace ppa
