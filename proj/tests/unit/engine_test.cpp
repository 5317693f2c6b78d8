#include <doctest.h>

#include "ppa/engine.hpp"
#include "ppa/error.hpp"

#include <cmath>
#include <random>

using namespace ppa;

namespace {

Scenario halving() {
  return Scenario("halving", SpaceInstance(2), Objective::quadratic({0.0, 0.0}, 1.0),
                  WeightSchedule(WeightKind::constant, Rational(1)), Point{1.0, 0.0}, Rational(1));
}

}  // namespace

TEST_CASE("closed-form trajectory") {
  const Scenario sc = halving();
  const Trajectory t = run(sc, 20);
  REQUIRE(t.steps() == 20);
  REQUIRE(t.points().size() == 21);
  for (unsigned n = 0; n <= 20; ++n) {
    CHECK(std::abs(t.points()[n][0] - std::ldexp(1.0, -static_cast<int>(n))) <= 1e-12);
    CHECK(t.points()[n][1] == 0.0);
    CHECK(std::abs(t.values()[n].value() - std::ldexp(1.0, -2 * static_cast<int>(n) - 1)) <= 1e-12);
  }
  CHECK(t.has_monitors());
  CHECK(t.monitors().size() == 20);
}

TEST_CASE("trajectories at fixed points are constant") {
  const Scenario at_min("at_min", SpaceInstance(2), Objective::quadratic({1.0, 2.0}, 3.0),
                        WeightSchedule(WeightKind::linear, Rational(1)), Point{1.0, 2.0}, Rational(1));
  const Trajectory a = run(at_min, 30);
  for (const auto& p : a.points()) CHECK(p == at_min.start);
  for (const auto& m : a.monitors()) {
    CHECK(std::abs(m.fejer_step) <= 1e-15);
    CHECK(std::abs(m.descent) <= 1e-15);
    CHECK(std::abs(m.distance_decrease) <= 1e-15);
  }

  // Inside a box the indicator's resolvent is the identity.
  const Scenario inside("inside", SpaceInstance(3), Objective::box_indicator({-5.0, -5.0, -5.0}, {5.0, 5.0, 5.0}),
                        WeightSchedule(WeightKind::harmonic, Rational(2)), Point{1.0, -2.0, 3.0}, Rational(1));
  const Trajectory b = run(inside, 25);
  for (const auto& p : b.points()) CHECK(p == inside.start);
}

TEST_CASE("step cap and errors") {
  const Scenario sc = halving();
  PpaRunner runner(sc);
  CHECK_THROWS_AS(runner.extend_to(kMaxSteps + 1), InvalidArgument);
  CHECK(run(sc, 0).points().size() == 1);

  objectives::SmoothCustom bad;
  bad.family = "steep";
  bad.value = [](const Point& y) { return 500.0 * y[0] * y[0]; };
  bad.gradient = [](const Point& y) { return std::vector<double>{1000.0 * y[0]}; };
  bad.lipschitz = 1.0;  // a lie: the solver overshoots
  const Scenario broken("broken", SpaceInstance(1), Objective(1, bad, 0.0, Point{0.0}),
                        WeightSchedule(WeightKind::constant, Rational(1)), Point{1.0}, Rational(1));
  try {
    run(broken, 5);
    FAIL("expected a step error");
  } catch (const StepError& e) {
    CHECK(e.step() == 0);
    CHECK(e.code() == ErrorCode::solver_divergence);
  }
}

TEST_CASE("scenario validation and warnings") {
  CHECK_THROWS_AS(Scenario("x", SpaceInstance(2), Objective::l1_norm(3, 1.0),
                           WeightSchedule(WeightKind::constant, Rational(1)), Point{0.0, 0.0}, Rational(1)),
                  DimensionMismatch);
  CHECK_THROWS_AS(Scenario("x", SpaceInstance(1), Objective::l1_norm(1, 1.0),
                           WeightSchedule(WeightKind::constant, Rational(1)), Point{0.0}, Rational(0)),
                  InvalidArgument);
  const Scenario ok = halving();
  CHECK(ok.b_verified());
  CHECK(ok.warnings().empty());

  const Scenario far("far", SpaceInstance(2), Objective::quadratic({0.0, 0.0}, 1.0),
                     WeightSchedule(WeightKind::constant, Rational(1)), Point{3.0, 0.0}, Rational(1));
  CHECK_FALSE(far.b_verified());
  CHECK(far.warnings() == std::vector<std::string>{"unverified-b"});

  objectives::SmoothCustom flat;
  flat.family = "flat";
  flat.value = [](const Point&) { return 0.0; };
  flat.gradient = [](const Point&) { return std::vector<double>{0.0}; };
  flat.lipschitz = 1.0;
  const Scenario unknown("unknown", SpaceInstance(1), Objective(1, flat, 0.0, std::nullopt),
                         WeightSchedule(WeightKind::constant, Rational(1)), Point{0.0}, Rational(1));
  CHECK(unknown.warnings() == std::vector<std::string>{"unverified-b"});
  const Trajectory t = run(unknown, 3);
  CHECK_FALSE(t.has_monitors());
  CHECK(t.monitors().empty());
}

TEST_CASE("approximate fixed points") {
  const Scenario sc = halving();
  for (unsigned k : {0u, 1u, 10u, 100u}) CHECK(af_membership(sc, *sc.objective.known_minimizer(), k));

  // Quadratic with w = 1, gamma = 1: d(y, J y) = d(y, a) / 2.
  const Point far{1.0, 0.0};
  CHECK(af_membership(sc, far, 1));        // 1/2 <= 1/2
  CHECK_FALSE(af_membership(sc, far, 2));  // 1/2 > 1/3
  CHECK_FALSE(af_membership(sc, far, 10));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int t = 0; t < 500; ++t) {
    const Point y{u(rng), u(rng)};
    for (unsigned k = 0; k < 8; ++k) {
      if (af_membership(sc, y, k + 1)) CHECK(af_membership(sc, y, k));
    }
  }
}

TEST_CASE("monitor examples") {
  const Scenario sc = halving();
  const Trajectory t = run(sc, 3);
  const MonitorRecord m = monitor_step(sc, 0, t);
  CHECK(m.distance_decrease == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.descent == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.value_gap == doctest::Approx(0.5 - 0.125).epsilon(1e-15));
  CHECK(m.fejer_step == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.monitors()[0].descent == m.descent);
  CHECK_THROWS_AS(monitor_step(sc, 3, t), InvalidArgument);
}

TEST_CASE("fejer monotone and nonincreasing values") {
  const Scenario sc("box", SpaceInstance(3), Objective::box_indicator({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}),
                    WeightSchedule(WeightKind::linear, Rational(1)), Point{3.0, 0.5, -2.0}, Rational(5, 2));
  const Trajectory t = run(sc, 50);
  const Point& p = *sc.objective.known_minimizer();
  for (unsigned n = 0; n < 50; ++n) {
    CHECK(sc.space.distance(t.points()[n + 1], p) <= sc.space.distance(t.points()[n], p) + 1e-10);
    CHECK(t.values()[n + 1] <= ExtendedReal(t.values()[n].value() + 1e-10));
    CHECK(t.monitors()[n].min() >= -1e-9);
  }
}
