#ifndef PPA_RATEFN_HPP
#define PPA_RATEFN_HPP

#include "ppa/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ppa {

// Largest argument a max-prefix scan over a non-monotone function may cover.
inline constexpr std::uint64_t kScanThreshold = 1'000'000;

struct EvalLimits {
  std::uint64_t max_bits = kDefaultMaxBits;
  std::uint64_t scan_threshold = kScanThreshold;
};

// A closed-form function of one natural variable n. Expressions are built
// from constants, the variable, +, *, monus, max, ceiling division, integer
// power, ceiling, ceiling square root, composition, the max-prefix transform
// and finite tables. Intermediate values are exact nonnegative rationals, so
// the same type carries the natural-valued moduli and the rational-valued
// weight bound M.
//
// `monotone()` is true only when nondecreasing-ness follows from the
// construction rules; it is never inferred by sampling.
class RateFn {
 public:
  enum class Op {
    constant,
    variable,
    add,
    mul,
    monus,
    max,
    ceil_div,
    power,
    ceil,
    isqrt_ceil,
    compose,
    max_prefix,
    table,
  };

  struct Node;

  // The identity n -> n.
  RateFn();

  static RateFn constant(const Rational& c);
  static RateFn constant(std::int64_t c) { return constant(Rational(c)); }
  static RateFn variable();
  // n -> values[n], and values.back() beyond the table.
  static RateFn table(std::vector<Nat> values);

  static RateFn add(const RateFn& a, const RateFn& b);
  static RateFn mul(const RateFn& a, const RateFn& b);
  static RateFn monus(const RateFn& a, const RateFn& b);
  static RateFn max(const RateFn& a, const RateFn& b);
  static RateFn ceil_div(const RateFn& a, const RateFn& b);
  static RateFn power(const RateFn& base, const RateFn& exponent);
  static RateFn ceil(const RateFn& a);
  static RateFn isqrt_ceil(const RateFn& a);
  // outer(inner(n)); inner must be natural-valued.
  static RateFn compose(const RateFn& outer, const RateFn& inner);
  // f^M(n) = max_{i <= n} f(i). Returns `f` itself when f is flagged
  // monotone.
  static RateFn max_prefix(const RateFn& f);

  // Natural-valued evaluation; throws InvalidArgument if the value is not a
  // natural number.
  Nat operator()(const Nat& n, const EvalLimits& limits = {}) const;
  Nat operator()(std::uint64_t n, const EvalLimits& limits = {}) const {
    return (*this)(Nat(n), limits);
  }
  Rational eval_rational(const Nat& n, const EvalLimits& limits = {}) const;

  bool monotone() const;
  Op op() const;
  // Value of a constant node; throws for anything else.
  const Rational& constant_value() const;

  std::string describe() const;
  nlohmann::json to_json() const;
  static RateFn from_json(const nlohmann::json& j);

  friend RateFn operator+(const RateFn& a, const RateFn& b) { return add(a, b); }
  friend RateFn operator*(const RateFn& a, const RateFn& b) { return mul(a, b); }

 private:
  explicit RateFn(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

}  // namespace ppa

#endif  // PPA_RATEFN_HPP
