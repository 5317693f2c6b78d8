#include "ppa/moduli.hpp"

#include "ppa/error.hpp"

#include <functional>

namespace ppa {

namespace {

void check_magnitude(const Nat& v, const EvalLimits& limits, const char* what) {
  // Squaring v must stay within budget.
  if (2 * bit_length(v) + 64 > limits.max_bits) {
    throw MagnitudeLimitExceeded(std::string(what) + " has " +
                                 std::to_string(bit_length(v)) +
                                 " bits, beyond the exact-evaluation budget");
  }
}

Nat square(const Nat& v) { return v * v; }

// One step of the Psi / Omega recursion.
using Step = std::function<Nat(const Nat&)>;

struct RecursionResult {
  Nat value;
  Nat iterations;
  bool finished = false;  // all `steps` evaluated or a fixed point reached
};

// Iterates v <- step(v) from 0 at most `steps` times. Stops early once
// v >= *stop_at when a stop value is given.
RecursionResult iterate(const Step& step, const Nat& steps, const Nat* stop_at,
                        const EvalLimits& limits) {
  RecursionResult r;
  r.value = 0;
  r.iterations = 0;
  while (r.iterations < steps) {
    if (stop_at && r.value >= *stop_at) return r;
    check_magnitude(r.value, limits, "recursion iterate");
    Nat next = step(r.value);
    ++r.iterations;
    if (next == r.value) {
      // Fixed point of the recursion; every later iterate is the same.
      r.finished = true;
      return r;
    }
    r.value = std::move(next);
  }
  r.finished = true;
  return r;
}

Nat guarded_steps(const RateFn& alpha, const Nat& arg, const RecursionOptions& options) {
  Nat steps = alpha(arg, options.limits);
  if (!options.force && steps > kMaxRecursionDepth) {
    throw DepthLimitExceeded("recursion depth alpha(" + arg.str() + ") = " + steps.str() +
                             " exceeds " + std::to_string(kMaxRecursionDepth) +
                             " (use force to override)");
  }
  return steps;
}

Step psi_step(const BoundContext& ctx, const Nat& k, const RateFn& g,
              const EvalLimits& limits) {
  const Nat r = 4 * k + 3;
  return [&ctx, &g, r, limits](const Nat& v) {
    return approx_point_modulus(ctx, chi_g_sup(g, v, r, limits), limits);
  };
}

Step omega_step(const BoundContext& ctx, const Nat& k, const RateFn& g,
                const EvalLimits& limits) {
  const Nat r = 8 * k + 8;
  return [&ctx, &g, k, r, limits](const Nat& v) {
    return approx_point_modulus(ctx, chi_tilde_sup(k, g, v, r, limits), limits);
  };
}

BoundComparison compare(const Step& step, const Nat& steps, const Nat& target,
                        bool monotone, const EvalLimits& limits) {
  BoundComparison out;
  if (monotone) {
    RecursionResult r = iterate(step, steps, &target, limits);
    out.reached = r.value >= target;
    out.exact = r.finished;
    out.established = std::move(r.value);
    out.iterations = std::move(r.iterations);
    return out;
  }
  if (steps > kMaxRecursionDepth) {
    throw DepthLimitExceeded("non-monotone g or M needs the full recursion of depth " +
                             steps.str());
  }
  RecursionResult r = iterate(step, steps, nullptr, limits);
  out.reached = r.value >= target;
  out.exact = true;
  out.established = std::move(r.value);
  out.iterations = std::move(r.iterations);
  return out;
}

}  // namespace

BoundContext::BoundContext(Rational b_, RateFn theta_, RateFn bound_, RateFn alpha_)
    : b(std::move(b_)),
      theta(std::move(theta_)),
      bound(std::move(bound_)),
      alpha(std::move(alpha_)) {
  if (b <= 0) throw InvalidArgument("b must be positive");
}

Nat delta_liminf(const Rational& b, const Nat& k, const Nat& L) {
  if (b <= 0) throw InvalidArgument("b must be positive");
  return monus(ceil(b * b * Rational(square(k + 1))) + L, Nat(1));
}

Nat beta_rate(const Rational& b, const RateFn& theta, const Nat& k,
              const EvalLimits& limits) {
  if (b <= 0) throw InvalidArgument("b must be positive");
  const Nat arg = ceil(b * b * Rational(k + 1) / 2);
  return RateFn::max_prefix(theta)(arg, limits) + 1;
}

std::pair<Nat, Nat> closedness_moduli(const Nat& k) {
  return {2 * k + 1, 4 * k + 3};
}

Nat fejer_modulus(const Nat& n, const Nat& m, const Nat& r) {
  Nat a = monus(n + m, Nat(1));
  Nat b = m * (r + 1);
  return a < b ? b : a;
}

Nat approx_point_modulus(const BoundContext& ctx, const Nat& k, const EvalLimits& limits) {
  check_magnitude(k, limits, "Phi argument");
  const Nat k1sq = square(k + 1);
  const Nat head = ceil(ctx.b * ctx.b * Rational(k1sq));
  const Rational m = ctx.bound.eval_rational(k, limits);
  const Nat inner = monus(ceil(2 * Rational(k1sq) * m), Nat(1));
  return head + beta_rate(ctx.b, ctx.theta, inner, limits);
}

Nat chi_g_sup(const RateFn& g, const Nat& n, const Nat& r, const EvalLimits& limits) {
  const auto term = [&](const Nat& i) {
    const Nat gi = g(i, limits);
    Nat a = monus(i + gi, Nat(1));
    Nat b = gi * (r + 1);
    return a < b ? b : a;
  };
  if (g.monotone()) return term(n);
  if (n > limits.scan_threshold) {
    throw ScanLimitExceeded("sup over i <= " + n.str() +
                            " of a non-monotone g exceeds the scan threshold " +
                            std::to_string(limits.scan_threshold));
  }
  Nat best = 0;
  const auto upto = n.convert_to<std::uint64_t>();
  for (std::uint64_t i = 0; i <= upto; ++i) {
    Nat v = term(Nat(i));
    if (v > best) best = std::move(v);
  }
  return best;
}

Nat chi_tilde_sup(const Nat& k, const RateFn& g, const Nat& n, const Nat& r,
                  const EvalLimits& limits) {
  Nat floor_value = 2 * k + 1;
  Nat sup = chi_g_sup(g, n, r, limits);
  return sup < floor_value ? floor_value : sup;
}

Nat psi_rate(const BoundContext& ctx, const Nat& k, const RateFn& g,
             const RecursionOptions& options) {
  const Nat steps = guarded_steps(ctx.alpha, 4 * k + 3, options);
  return iterate(psi_step(ctx, k, g, options.limits), steps, nullptr, options.limits).value;
}

Nat omega_rate(const BoundContext& ctx, const Nat& k, const RateFn& g,
               const RecursionOptions& options) {
  const Nat steps = guarded_steps(ctx.alpha, 8 * k + 7, options);
  return iterate(omega_step(ctx, k, g, options.limits), steps, nullptr, options.limits).value;
}

BoundComparison psi_at_least(const BoundContext& ctx, const Nat& k, const RateFn& g,
                             const Nat& target, const EvalLimits& limits) {
  const Nat steps = ctx.alpha(4 * k + 3, limits);
  return compare(psi_step(ctx, k, g, limits), steps, target,
                 g.monotone() && ctx.bound.monotone(), limits);
}

BoundComparison omega_at_least(const BoundContext& ctx, const Nat& k, const RateFn& g,
                               const Nat& target, const EvalLimits& limits) {
  const Nat steps = ctx.alpha(8 * k + 7, limits);
  return compare(omega_step(ctx, k, g, limits), steps, target,
                 g.monotone() && ctx.bound.monotone(), limits);
}

}  // namespace ppa
