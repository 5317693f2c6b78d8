#ifndef PPA_VERIFY_HPP
#define PPA_VERIFY_HPP

#include "ppa/engine.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ppa {

// A nondecreasing g: N -> N from a small catalog, used as the counterexample
// function in metastability statements.
struct CounterexampleFn {
  std::string name;
  RateFn fn;

  static CounterexampleFn constant(std::uint64_t c);        // "const:c"
  static CounterexampleFn identity_plus(std::uint64_t c);   // "id+c"
  static CounterexampleFn doubling();                       // "doubling", 2N+1
  // Running maximum of `values`, extended by its last entry.
  static CounterexampleFn table(const std::vector<Nat>& values);  // "table:a,b,..."

  // Catalog shorthand, or a JSON rate-function AST (which must be monotone).
  static CounterexampleFn parse(const std::string& text);
  static std::vector<CounterexampleFn> default_catalog();
};

struct VerifyOptions {
  std::uint64_t search_cap = 100'000;
  // Budget for printing Psi/Omega exactly; beyond it the report carries the
  // lower bound established while certifying.
  std::uint64_t report_bits = std::uint64_t{1} << 16;
  EvalLimits limits{};
};

struct TrialReport {
  std::string scenario_id;
  std::string rate;  // "psi" or "omega"
  std::uint64_t k = 0;
  std::string g;
  std::optional<std::uint64_t> witness;
  std::string bound;          // decimal
  bool bound_exact = false;   // false: bound is a proven lower bound of the rate
  bool holds = false;
  std::uint64_t window_checks = 0;
  double wall_ms = 0.0;
  std::vector<std::string> warnings;
  std::string diagnostic;

  nlohmann::json to_json() const;
};

// Smallest N <= search_cap with d(x_i, x_j) <= 1/(k+1) + 1e-9 for all
// i, j in [N, N + g(N)]. `window_checks` accumulates distance evaluations.
std::optional<std::uint64_t> find_metastability_witness(
    PpaRunner& runner, std::uint64_t k, const CounterexampleFn& g,
    std::uint64_t search_cap, std::uint64_t* window_checks = nullptr);

// As above, additionally requiring d(x_i, J_{gamma_d f} x_i) <= 1/(k+1) + 1e-9
// for every i in the window and every d <= k.
std::optional<std::uint64_t> find_fixed_window_witness(
    PpaRunner& runner, std::uint64_t k, const CounterexampleFn& g,
    std::uint64_t search_cap, std::uint64_t* window_checks = nullptr);

TrialReport certify_psi(const Scenario& sc, std::uint64_t k, const CounterexampleFn& g,
                        const VerifyOptions& options = {});
TrialReport certify_omega(const Scenario& sc, std::uint64_t k, const CounterexampleFn& g,
                          const VerifyOptions& options = {});

struct TrialGrid {
  std::uint64_t psi_k_max = 5;
  std::uint64_t omega_k_max = 3;
  std::vector<CounterexampleFn> catalog = CounterexampleFn::default_catalog();
  VerifyOptions options{};
  unsigned threads = 0;  // 0: hardware concurrency
};

// Every (scenario, rate, k, g) trial of the grid, run concurrently and
// returned in (scenario, rate, k, g) order.
std::vector<TrialReport> run_trials(const std::vector<Scenario>& scenarios,
                                    const TrialGrid& grid);

// Result of one sampled property suite over one scenario.
struct PropertyReport {
  std::string property;
  std::string scenario_id;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::uint64_t skipped = 0;
  std::string first_violation;

  bool holds() const noexcept { return violations == 0; }
  nlohmann::json to_json() const;
};

// All four step inequalities >= -1e-9 and f(x_n) nonincreasing within 1e-10.
PropertyReport check_monitors(const Scenario& sc, std::uint64_t steps);

// Some N in [L, delta_liminf(b,k,L)] with d(x_N, x_{N+1}) <= 1/(k+1) + 1e-10.
PropertyReport check_liminf_modulus(const Scenario& sc, std::uint64_t k_max,
                                    const std::vector<std::uint64_t>& Ls);

// f(x_n) - min f <= 1/(k+1) + 1e-9 at n = beta(k) and sampled n beyond it.
// Values of k with beta(k) > max_index are skipped.
PropertyReport check_value_rate(const Scenario& sc, std::uint64_t k_max,
                                std::uint64_t max_index = 100'000);

// Some N <= Phi(k) with x_N in AF_k, found by forward search.
PropertyReport check_approx_points(const Scenario& sc, std::uint64_t k_max,
                                   std::uint64_t search_cap = 100'000);

// Sampled points q in AF_chi(n,m,r) satisfy
// d(x_{n+l}, q) < d(x_n, q) + 1/(r+1) + 1e-9 for all l <= m.
PropertyReport check_uniform_fejer(const Scenario& sc, std::uint64_t samples);

// Sampled q in AF_{2k+1} and p with d(p,q) <= 1/(4k+4) give p in AF_k.
PropertyReport check_uniform_closedness(const Scenario& sc, std::uint64_t samples);

}  // namespace ppa

#endif  // PPA_VERIFY_HPP
