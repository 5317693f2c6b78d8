#include "ppa/engine.hpp"

#include "ppa/error.hpp"

#include <algorithm>

namespace ppa {

namespace {

MonitorRecord monitor(const Scenario& sc, std::uint64_t n, const Point& xn,
                      const Point& xn1, const ExtendedReal& f_next, double gamma_sum) {
  const Point& p = *sc.objective.known_minimizer();
  const double gamma = sc.schedule.gamma_double(n);
  const double d_n = sc.space.distance(xn, p);
  const double d_n1 = sc.space.distance(xn1, p);
  const double step = sc.space.distance(xn, xn1);
  const double p_moves = sc.space.distance(p, sc.objective.resolvent(gamma, p));
  const double d_0 = sc.space.distance(sc.start, p);
  const double gap = f_next.value() - sc.objective.known_min_value();

  MonitorRecord rec;
  rec.fejer_step = d_n + p_moves - d_n1;
  rec.distance_decrease = d_n * d_n - d_n1 * d_n1 - step * step;
  rec.descent = rec.distance_decrease - 2.0 * gamma * gap;
  rec.value_gap = d_0 * d_0 / (2.0 * gamma_sum) - gap;
  return rec;
}

}  // namespace

Scenario::Scenario(std::string id_, SpaceInstance space_, Objective objective_,
                   WeightSchedule schedule_, Point start_, Rational b_,
                   std::uint64_t seed_, std::optional<RateFn> alpha_override_)
    : id(std::move(id_)),
      space(space_),
      objective(std::move(objective_)),
      schedule(std::move(schedule_)),
      start(std::move(start_)),
      b(std::move(b_)),
      seed(seed_),
      alpha_override(std::move(alpha_override_)) {
  space.check(start);
  if (objective.dimension() != space.dimension()) {
    throw DimensionMismatch(space.dimension(), objective.dimension());
  }
  if (b <= 0) throw InvalidArgument("b must be positive");
}

bool Scenario::b_verified() const {
  const auto& p = objective.known_minimizer();
  if (!p) return false;
  return space.distance(start, *p) <= to_double(b) + 1e-12;
}

std::vector<std::string> Scenario::warnings() const {
  if (b_verified()) return {};
  return {"unverified-b"};
}

RateFn Scenario::alpha() const {
  if (alpha_override) return *alpha_override;
  return ball_total_boundedness_modulus(space.dimension(), b);
}

BoundContext Scenario::bound_context() const {
  return BoundContext(b, schedule.theta(), schedule.bound(), alpha());
}

double MonitorRecord::min() const {
  return std::min({fejer_step, descent, distance_decrease, value_gap});
}

PpaRunner::PpaRunner(const Scenario& scenario) : scenario_(scenario) {
  trajectory_.points_.push_back(scenario.start);
  trajectory_.values_.push_back(scenario.objective.evaluate(scenario.start));
  trajectory_.with_monitors_ = scenario.objective.known_minimizer().has_value();
}

void PpaRunner::extend_to(std::uint64_t n) {
  if (n > kMaxSteps) {
    throw InvalidArgument("trajectory length " + std::to_string(n) +
                          " exceeds the cap of " + std::to_string(kMaxSteps) + " steps");
  }
  auto& t = trajectory_;
  while (t.steps() < n) {
    const std::uint64_t i = t.steps();
    const double gamma = scenario_.schedule.gamma_double(i);
    try {
      Point next = scenario_.objective.resolvent(gamma, t.points_.back());
      ExtendedReal value = scenario_.objective.evaluate(next);
      // Compensated running sum of the weights for the value bound.
      const double y = gamma - gamma_sum_carry_;
      const double s = gamma_sum_ + y;
      gamma_sum_carry_ = (s - gamma_sum_) - y;
      gamma_sum_ = s;
      if (t.with_monitors_) {
        t.monitors_.push_back(
            monitor(scenario_, i, t.points_.back(), next, value, gamma_sum_));
      }
      t.points_.push_back(std::move(next));
      t.values_.push_back(value);
    } catch (const Error& e) {
      throw StepError(i, e);
    }
  }
}

const Point& PpaRunner::point(std::uint64_t n) {
  extend_to(n);
  return trajectory_.points_[n];
}

Trajectory run(const Scenario& scenario, std::uint64_t steps) {
  PpaRunner runner(scenario);
  runner.extend_to(steps);
  return std::move(runner).release();
}

bool af_membership(const Scenario& scenario, const Point& y, std::uint64_t k,
                   double tolerance) {
  const double threshold = 1.0 / (static_cast<double>(k) + 1.0) + tolerance;
  for (std::uint64_t i = 0; i <= k; ++i) {
    const Point jy = scenario.objective.resolvent(scenario.schedule.gamma_double(i), y);
    if (scenario.space.distance(y, jy) > threshold) return false;
  }
  return true;
}

MonitorRecord monitor_step(const Scenario& scenario, std::uint64_t n,
                           const Trajectory& traj) {
  if (!scenario.objective.known_minimizer()) {
    throw InvalidArgument("monitors need a known minimizer");
  }
  if (n >= traj.steps()) throw InvalidArgument("monitor step beyond trajectory end");
  double gamma_sum = 0.0;
  for (std::uint64_t i = 0; i <= n; ++i) gamma_sum += scenario.schedule.gamma_double(i);
  return monitor(scenario, n, traj.points()[n], traj.points()[n + 1],
                 traj.values()[n + 1], gamma_sum);
}

}  // namespace ppa
