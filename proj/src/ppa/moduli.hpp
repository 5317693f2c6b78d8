#ifndef PPA_MODULI_HPP
#define PPA_MODULI_HPP

#include "ppa/numeric.hpp"
#include "ppa/ratefn.hpp"

#include <cstdint>
#include <utility>

namespace ppa {

// Everything the rates depend on: a distance bound b to some minimizer, the
// rate of divergence theta, the weight bound M and a modulus of total
// boundedness alpha.
struct BoundContext {
  Rational b;
  RateFn theta;
  RateFn bound;  // M
  RateFn alpha;

  BoundContext(Rational b, RateFn theta, RateFn bound, RateFn alpha);
};

// Recursion-depth guard for psi_rate / omega_rate.
inline constexpr std::uint64_t kMaxRecursionDepth = 100'000;

struct RecursionOptions {
  bool force = false;
  EvalLimits limits{};
};

// Modulus of liminf of d(x_n, x_{n+1}): ceil(b^2 (k+1)^2) + L -. 1.
Nat delta_liminf(const Rational& b, const Nat& k, const Nat& L);

// Rate of convergence of f(x_n) to min f: theta^M(ceil(b^2 (k+1) / 2)) + 1.
Nat beta_rate(const Rational& b, const RateFn& theta, const Nat& k,
              const EvalLimits& limits = {});

// Uniform closedness moduli (delta_F, omega_F) = (2k+1, 4k+3).
std::pair<Nat, Nat> closedness_moduli(const Nat& k);

// Uniform Fejer modulus max(n + m -. 1, m (r+1)).
Nat fejer_modulus(const Nat& n, const Nat& m, const Nat& r);

// Approximate F-point modulus
// Phi(k) = ceil(b^2 (k+1)^2) + beta(ceil(2 (k+1)^2 M(k)) -. 1).
Nat approx_point_modulus(const BoundContext& ctx, const Nat& k,
                         const EvalLimits& limits = {});

// chi_g^M(n, r) = max_{i <= n} max(i + g(i) -. 1, g(i) (r+1)). For monotone g
// only i = n is evaluated; otherwise i is scanned up to the scan threshold.
Nat chi_g_sup(const RateFn& g, const Nat& n, const Nat& r,
              const EvalLimits& limits = {});

// max(2k+1, chi_g^M(n, r)).
Nat chi_tilde_sup(const Nat& k, const RateFn& g, const Nat& n, const Nat& r,
                  const EvalLimits& limits = {});

// Rate of metastability: Psi_0 iterated alpha(4k+3) times from 0 with
// Psi_0(j+1) = Phi(chi_g^M(Psi_0(j), 4k+3)).
Nat psi_rate(const BoundContext& ctx, const Nat& k, const RateFn& g,
             const RecursionOptions& options = {});

// Omega_0 iterated alpha(8k+7) times from 0 with
// Omega_0(j+1) = Phi(chi_tilde_sup(k, g, Omega_0(j), 8k+8)).
Nat omega_rate(const BoundContext& ctx, const Nat& k, const RateFn& g,
               const RecursionOptions& options = {});

// Outcome of comparing a candidate N against Psi or Omega without
// necessarily finishing the recursion.
struct BoundComparison {
  bool reached = false;      // established target <= rate
  Nat established;           // a value known to be <= rate (== rate if exact)
  bool exact = false;        // established is the rate itself
  Nat iterations;            // recursion steps evaluated
};

// Decides target <= psi_rate(ctx, k, g) exactly. The recursion is
// nondecreasing in its step index whenever g and M are monotone (Phi and
// chi^M are then nondecreasing and the base value is 0), so it stops at the
// first iterate >= target. Falls back to full evaluation otherwise.
BoundComparison psi_at_least(const BoundContext& ctx, const Nat& k, const RateFn& g,
                             const Nat& target, const EvalLimits& limits = {});
BoundComparison omega_at_least(const BoundContext& ctx, const Nat& k, const RateFn& g,
                               const Nat& target, const EvalLimits& limits = {});

}  // namespace ppa

#endif  // PPA_MODULI_HPP
