#ifndef PPA_SCHEDULE_HPP
#define PPA_SCHEDULE_HPP

#include "ppa/numeric.hpp"
#include "ppa/ratefn.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ppa {

enum class WeightKind {
  constant,  // gamma_n = c
  linear,    // gamma_n = c (n + 1)
  harmonic,  // gamma_n = c / (n + 1)
};

std::string to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& name);

// theta with sum_{n <= theta(P)} gamma_n >= P:
//   constant  ceil(P/c) -. 1
//   linear    isqrt_ceil(ceil(2P/c))
//   harmonic  2^ceil(2P/c)   (2^m terms of 1/(n+1) sum to at least m/2)
RateFn default_theta(WeightKind kind, const Rational& c);

// M with M(k) >= max_{i <= k} gamma_i, nondecreasing.
RateFn default_weight_bound(WeightKind kind, const Rational& c);

// A positive weight sequence packaged with its rate of divergence theta and
// its running-maximum bound M.
class WeightSchedule {
 public:
  WeightSchedule(WeightKind kind, Rational c);
  WeightSchedule(WeightKind kind, Rational c, RateFn theta, RateFn bound);

  WeightKind kind() const noexcept { return kind_; }
  const Rational& c() const noexcept { return c_; }
  const RateFn& theta() const noexcept { return theta_; }
  const RateFn& bound() const noexcept { return bound_; }
  bool default_theta() const noexcept { return default_theta_; }

  Rational gamma(const Nat& n) const;
  Rational gamma(std::uint64_t n) const { return gamma(Nat(n)); }
  double gamma_double(std::uint64_t n) const;

 private:
  WeightKind kind_;
  Rational c_;
  RateFn theta_;
  RateFn bound_;
  bool default_theta_ = true;
};

struct ScheduleAudit {
  enum class Status { certified, violated, budget_exhausted };
  Status status = Status::certified;
  // First failing argument when not certified.
  std::uint64_t at = 0;
  std::string detail;

  bool ok() const noexcept { return status == Status::certified; }
};

// Exact check that sum_{n=0}^{theta(P)} gamma_n >= P for every P <= p_max.
// Partial sums are accumulated term by term and stop as soon as they reach P,
// so `term_budget` only bounds the number of terms actually needed.
ScheduleAudit audit_divergence_rate(const WeightSchedule& ws,
                                    std::uint64_t p_max = 100,
                                    std::uint64_t term_budget = 20'000);

// Exact check that M(k) >= max_{i <= k} gamma_i for every k <= k_max.
ScheduleAudit audit_weight_bound(const WeightSchedule& ws,
                                 std::uint64_t k_max = 100);

}  // namespace ppa

#endif  // PPA_SCHEDULE_HPP
