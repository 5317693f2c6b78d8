#include "ppa/schedule.hpp"

#include "ppa/error.hpp"

namespace ppa {

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::constant: return "constant";
    case WeightKind::linear: return "linear";
    case WeightKind::harmonic: return "harmonic";
  }
  return "?";
}

WeightKind weight_kind_from_string(const std::string& name) {
  if (name == "constant") return WeightKind::constant;
  if (name == "linear") return WeightKind::linear;
  if (name == "harmonic") return WeightKind::harmonic;
  throw InvalidArgument("unknown weight schedule kind '" + name + "'");
}

RateFn default_theta(WeightKind kind, const Rational& c) {
  if (c <= 0) throw InvalidArgument("schedule constant c must be positive");
  const RateFn P = RateFn::variable();
  switch (kind) {
    case WeightKind::constant:
      return RateFn::monus(RateFn::ceil(RateFn::constant(1 / c) * P),
                           RateFn::constant(1));
    case WeightKind::linear:
      return RateFn::isqrt_ceil(RateFn::ceil(RateFn::constant(2 / c) * P));
    case WeightKind::harmonic:
      return RateFn::power(RateFn::constant(2),
                           RateFn::ceil(RateFn::constant(2 / c) * P));
  }
  throw InvalidArgument("unknown weight schedule kind");
}

RateFn default_weight_bound(WeightKind kind, const Rational& c) {
  if (c <= 0) throw InvalidArgument("schedule constant c must be positive");
  switch (kind) {
    case WeightKind::constant:
    case WeightKind::harmonic:
      return RateFn::constant(c);
    case WeightKind::linear:
      return RateFn::constant(c) * (RateFn::variable() + RateFn::constant(1));
  }
  throw InvalidArgument("unknown weight schedule kind");
}

WeightSchedule::WeightSchedule(WeightKind kind, Rational c)
    : kind_(kind),
      c_(c),
      theta_(ppa::default_theta(kind, c)),
      bound_(default_weight_bound(kind, c)) {}

WeightSchedule::WeightSchedule(WeightKind kind, Rational c, RateFn theta, RateFn bound)
    : kind_(kind),
      c_(c),
      theta_(std::move(theta)),
      bound_(std::move(bound)),
      default_theta_(false) {
  if (c_ <= 0) throw InvalidArgument("schedule constant c must be positive");
}

Rational WeightSchedule::gamma(const Nat& n) const {
  switch (kind_) {
    case WeightKind::constant: return c_;
    case WeightKind::linear: return c_ * Rational(n + 1);
    case WeightKind::harmonic: return c_ / Rational(n + 1);
  }
  return c_;
}

double WeightSchedule::gamma_double(std::uint64_t n) const {
  const double c = to_double(c_);
  const double m = static_cast<double>(n) + 1.0;
  switch (kind_) {
    case WeightKind::constant: return c;
    case WeightKind::linear: return c * m;
    case WeightKind::harmonic: return c / m;
  }
  return c;
}

ScheduleAudit audit_divergence_rate(const WeightSchedule& ws, std::uint64_t p_max,
                                    std::uint64_t term_budget) {
  ScheduleAudit audit;
  Rational partial = 0;
  std::uint64_t terms = 0;  // partial = sum of gamma_0 .. gamma_{terms-1}
  for (std::uint64_t p = 0; p <= p_max; ++p) {
    Nat horizon;
    try {
      horizon = ws.theta()(Nat(p));
    } catch (const MagnitudeLimitExceeded& e) {
      audit.status = ScheduleAudit::Status::budget_exhausted;
      audit.at = p;
      audit.detail = e.what();
      return audit;
    }
    const Rational target(p);
    // Partial sums are increasing; once they reach P within the first
    // theta(P) + 1 terms the certificate holds for P.
    while (partial < target && horizon >= terms) {
      if (terms >= term_budget) {
        audit.status = ScheduleAudit::Status::budget_exhausted;
        audit.at = p;
        audit.detail = "term budget of " + std::to_string(term_budget) + " exhausted";
        return audit;
      }
      partial += ws.gamma(Nat(terms));
      ++terms;
    }
    // The partial sum may already include terms beyond theta(P) from an
    // earlier P; recompute exactly in that case.
    if (Nat(terms) > horizon + 1) {
      Rational exact = 0;
      const auto upto = to_u64(horizon);
      for (std::uint64_t n = 0; n <= upto; ++n) exact += ws.gamma(Nat(n));
      if (exact < target) {
        audit.status = ScheduleAudit::Status::violated;
        audit.at = p;
        audit.detail = "partial sum up to theta(" + std::to_string(p) + ") = " +
                       horizon.str() + " is " + to_string(exact);
        return audit;
      }
      continue;
    }
    if (partial < target) {
      audit.status = ScheduleAudit::Status::violated;
      audit.at = p;
      audit.detail = "partial sum up to theta(" + std::to_string(p) + ") = " +
                     horizon.str() + " is " + to_string(partial);
      return audit;
    }
  }
  return audit;
}

ScheduleAudit audit_weight_bound(const WeightSchedule& ws, std::uint64_t k_max) {
  ScheduleAudit audit;
  Rational running_max = 0;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const Rational g = ws.gamma(Nat(k));
    if (g > running_max) running_max = g;
    const Rational bound = ws.bound().eval_rational(Nat(k));
    if (bound < running_max) {
      audit.status = ScheduleAudit::Status::violated;
      audit.at = k;
      audit.detail = "M(" + std::to_string(k) + ") = " + to_string(bound) +
                     " < max gamma_i = " + to_string(running_max);
      return audit;
    }
  }
  return audit;
}

}  // namespace ppa
