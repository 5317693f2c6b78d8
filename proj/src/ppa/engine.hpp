#ifndef PPA_ENGINE_HPP
#define PPA_ENGINE_HPP

#include "ppa/geometry.hpp"
#include "ppa/moduli.hpp"
#include "ppa/objective.hpp"
#include "ppa/schedule.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ppa {

inline constexpr std::uint64_t kMaxSteps = 1'000'000;

// One run of the proximal point algorithm: where it starts, what it
// minimizes, the weights, and the bound b on the distance from the start to
// some minimizer.
struct Scenario {
  std::string id;
  SpaceInstance space;
  Objective objective;
  WeightSchedule schedule;
  Point start;
  Rational b;
  std::uint64_t seed = 0;
  std::optional<RateFn> alpha_override;

  Scenario(std::string id, SpaceInstance space, Objective objective,
           WeightSchedule schedule, Point start, Rational b, std::uint64_t seed = 0,
           std::optional<RateFn> alpha_override = std::nullopt);

  // True iff a minimizer is known and d(start, minimizer) <= b.
  bool b_verified() const;
  // "unverified-b" when b cannot be checked against a known minimizer.
  std::vector<std::string> warnings() const;

  // The override if present, else the ball modulus for (dimension, b).
  RateFn alpha() const;
  BoundContext bound_context() const;
};

// Residuals (right side minus left side) of the per-step inequalities for a
// minimizer p. Each is >= 0 up to rounding when the inequality holds.
struct MonitorRecord {
  // d(x_n,p) + d(p, J p) - d(x_{n+1},p)
  double fejer_step = 0.0;
  // d^2(x_n,p) - d^2(x_{n+1},p) - d^2(x_n,x_{n+1}) - 2 gamma_n (f(x_{n+1}) - min f)
  double descent = 0.0;
  // d^2(x_n,p) - d^2(x_{n+1},p) - d^2(x_n,x_{n+1})
  double distance_decrease = 0.0;
  // d^2(x_0,p) / (2 sum_{i<=n} gamma_i) - (f(x_{n+1}) - min f)
  double value_gap = 0.0;

  double min() const;
};

class Trajectory {
 public:
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<ExtendedReal>& values() const noexcept { return values_; }
  // monitors()[n] covers the step x_n -> x_{n+1}; empty when no minimizer
  // is known.
  const std::vector<MonitorRecord>& monitors() const noexcept { return monitors_; }
  bool has_monitors() const noexcept { return with_monitors_; }
  std::uint64_t steps() const noexcept { return points_.size() - 1; }

 private:
  friend class PpaRunner;
  std::vector<Point> points_;
  std::vector<ExtendedReal> values_;
  std::vector<MonitorRecord> monitors_;
  bool with_monitors_ = false;
};

// Extends a trajectory on demand. Not shared between threads.
class PpaRunner {
 public:
  explicit PpaRunner(const Scenario& scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  // Ensures x_0 .. x_n exist. Throws StepError on resolvent failure and
  // InvalidArgument above kMaxSteps.
  void extend_to(std::uint64_t n);
  const Point& point(std::uint64_t n);
  const Trajectory& trajectory() const noexcept { return trajectory_; }
  Trajectory release() && { return std::move(trajectory_); }

 private:
  const Scenario& scenario_;
  Trajectory trajectory_;
  double gamma_sum_ = 0.0;
  double gamma_sum_carry_ = 0.0;
};

Trajectory run(const Scenario& scenario, std::uint64_t steps);

// y in AF_k: d(y, J_{gamma_i f} y) <= 1/(k+1) + tolerance for every i <= k.
bool af_membership(const Scenario& scenario, const Point& y, std::uint64_t k,
                   double tolerance = 1e-10);

// Inequality residuals for the step x_n -> x_{n+1}. Requires a known
// minimizer and n < traj.steps().
MonitorRecord monitor_step(const Scenario& scenario, std::uint64_t n,
                           const Trajectory& traj);

}  // namespace ppa

#endif  // PPA_ENGINE_HPP
