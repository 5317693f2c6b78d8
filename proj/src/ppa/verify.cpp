#include "ppa/verify.hpp"

#include "ppa/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace ppa {

namespace {

constexpr double kWindowSlack = 1e-9;

double threshold(std::uint64_t k) { return 1.0 / (static_cast<double>(k) + 1.0); }

std::uint64_t window_end(std::uint64_t N, const CounterexampleFn& g) {
  const Nat width = g.fn(Nat(N));
  const Nat end = Nat(N) + width;
  if (end > kMaxSteps) {
    throw InvalidArgument("window [" + std::to_string(N) + ", " + end.str() +
                          "] exceeds the trajectory cap");
  }
  return end.convert_to<std::uint64_t>();
}

bool window_oscillation_ok(PpaRunner& runner, std::uint64_t lo, std::uint64_t hi,
                           double eps, std::uint64_t& checks) {
  runner.extend_to(hi);
  const auto& pts = runner.trajectory().points();
  const auto& space = runner.scenario().space;
  // Far pairs first: on a converging trajectory they fail fastest.
  for (std::uint64_t i = lo; i <= hi; ++i) {
    for (std::uint64_t j = hi; j > i; --j) {
      ++checks;
      if (space.distance(pts[i], pts[j]) > eps) return false;
    }
  }
  return true;
}

std::vector<double> unit_direction(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  double norm2 = 0.0;
  while (norm2 < 1e-24) {
    norm2 = 0.0;
    for (auto& c : v) {
      c = normal(rng);
      norm2 += c * c;
    }
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= inv;
  return v;
}

Point offset(const Point& base, const std::vector<double>& dir, double length) {
  std::vector<double> out(base.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] + length * dir[i];
  return Point(std::move(out));
}

// A point near the known minimizer, at a log-uniform distance up to b.
Point sample_near_minimizer(const Scenario& sc, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Point& p = *sc.objective.known_minimizer();
  const double scale = to_double(sc.b) * std::pow(10.0, -5.0 * unit(rng));
  return offset(p, unit_direction(p.dimension(), rng), scale * unit(rng));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

TrialReport certify(const Scenario& sc, std::uint64_t k, const CounterexampleFn& g,
                    const VerifyOptions& options, bool omega) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialReport rep;
  rep.scenario_id = sc.id;
  rep.rate = omega ? "omega" : "psi";
  rep.k = k;
  rep.g = g.name;
  rep.warnings = sc.warnings();
  try {
    PpaRunner runner(sc);
    const auto witness =
        omega ? find_fixed_window_witness(runner, k, g, options.search_cap, &rep.window_checks)
              : find_metastability_witness(runner, k, g, options.search_cap, &rep.window_checks);
    const BoundContext ctx = sc.bound_context();

    std::optional<Nat> exact;
    try {
      RecursionOptions ro;
      ro.limits = options.limits;
      ro.limits.max_bits = options.report_bits;
      exact = omega ? omega_rate(ctx, Nat(k), g.fn, ro) : psi_rate(ctx, Nat(k), g.fn, ro);
    } catch (const Error&) {
      // Too deep or too large to print; certification below stays exact.
    }

    const Nat target = witness ? Nat(*witness) : Nat(options.search_cap) + 1;
    if (exact) {
      rep.bound = exact->str();
      rep.bound_exact = true;
      rep.holds = witness && target <= *exact;
    } else {
      const BoundComparison cmp =
          omega ? omega_at_least(ctx, Nat(k), g.fn, target, options.limits)
                : psi_at_least(ctx, Nat(k), g.fn, target, options.limits);
      rep.bound = cmp.established.str();
      rep.bound_exact = cmp.exact;
      rep.holds = witness && cmp.reached;
    }

    if (witness) {
      rep.witness = *witness;
      if (!rep.holds) {
        rep.diagnostic = "witness N = " + std::to_string(*witness) + " exceeds the bound " +
                         rep.bound;
      }
    } else if (rep.bound_exact && Nat(rep.bound) <= options.search_cap) {
      rep.diagnostic = "no N <= " + rep.bound +
                       " satisfies the window condition: rate bound violated";
    } else {
      rep.diagnostic = "no witness within search cap " + std::to_string(options.search_cap);
    }
  } catch (const Error& e) {
    rep.holds = false;
    rep.diagnostic = e.what();
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

}  // namespace

CounterexampleFn CounterexampleFn::constant(std::uint64_t c) {
  return {"const:" + std::to_string(c), RateFn::constant(Rational(c))};
}

CounterexampleFn CounterexampleFn::identity_plus(std::uint64_t c) {
  return {"id+" + std::to_string(c),
          RateFn::variable() + RateFn::constant(Rational(c))};
}

CounterexampleFn CounterexampleFn::doubling() {
  return {"doubling", RateFn::constant(2) * RateFn::variable() + RateFn::constant(1)};
}

CounterexampleFn CounterexampleFn::table(const std::vector<Nat>& values) {
  if (values.empty()) throw InvalidArgument("table g needs at least one value");
  std::vector<Nat> running;
  running.reserve(values.size());
  std::string name = "table:";
  for (std::size_t i = 0; i < values.size(); ++i) {
    running.push_back(i == 0 ? values[0] : std::max(running.back(), values[i]));
    name += (i ? "," : "") + values[i].str();
  }
  return {name, RateFn::table(std::move(running))};
}

CounterexampleFn CounterexampleFn::parse(const std::string& text) {
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
      throw InvalidArgument("malformed g '" + text + "'");
    }
    return std::stoull(s);
  };
  if (!text.empty() && text.front() == '{') {
    RateFn fn = RateFn::from_json(nlohmann::json::parse(text));
    if (!fn.monotone()) {
      throw InvalidArgument("counterexample functions must be provably nondecreasing");
    }
    return {fn.describe(), fn};
  }
  if (text == "doubling") return doubling();
  if (text.rfind("const:", 0) == 0) return constant(number(text.substr(6)));
  if (text.rfind("id+", 0) == 0) return identity_plus(number(text.substr(3)));
  if (text.rfind("table:", 0) == 0) {
    std::vector<Nat> values;
    std::stringstream ss(text.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) values.emplace_back(number(item));
    return table(values);
  }
  throw InvalidArgument("unknown g '" + text + "' (const:c, id+c, doubling, table:..., or JSON)");
}

std::vector<CounterexampleFn> CounterexampleFn::default_catalog() {
  return {constant(1), constant(4), identity_plus(2), doubling()};
}

nlohmann::json TrialReport::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario_id;
  j["rate"] = rate;
  j["k"] = k;
  j["g"] = g;
  j["witness_N"] = witness ? nlohmann::json(*witness) : nlohmann::json(nullptr);
  j["bound"] = bound;
  j["bound_exact"] = bound_exact;
  j["holds"] = holds;
  j["window_checks"] = window_checks;
  j["wall_ms"] = wall_ms;
  j["warnings"] = warnings;
  if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
  return j;
}

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json j{{"property", property},   {"scenario", scenario_id},
                   {"checks", checks},       {"violations", violations},
                   {"skipped", skipped},     {"holds", holds()}};
  if (!first_violation.empty()) j["first_violation"] = first_violation;
  return j;
}

std::optional<std::uint64_t> find_metastability_witness(PpaRunner& runner, std::uint64_t k,
                                                        const CounterexampleFn& g,
                                                        std::uint64_t search_cap,
                                                        std::uint64_t* window_checks) {
  std::uint64_t checks = 0;
  const double eps = threshold(k) + kWindowSlack;
  std::optional<std::uint64_t> found;
  for (std::uint64_t N = 0; N <= search_cap; ++N) {
    if (window_oscillation_ok(runner, N, window_end(N, g), eps, checks)) {
      found = N;
      break;
    }
  }
  if (window_checks) *window_checks += checks;
  return found;
}

std::optional<std::uint64_t> find_fixed_window_witness(PpaRunner& runner, std::uint64_t k,
                                                       const CounterexampleFn& g,
                                                       std::uint64_t search_cap,
                                                       std::uint64_t* window_checks) {
  std::uint64_t checks = 0;
  const double eps = threshold(k) + kWindowSlack;
  const auto& sc = runner.scenario();
  std::vector<signed char> near_fixed;  // 0 unknown, 1 yes, -1 no
  auto point_ok = [&](std::uint64_t i) {
    if (near_fixed.size() <= i) near_fixed.resize(i + 1, 0);
    if (near_fixed[i] == 0) {
      const Point& x = runner.point(i);
      bool ok = true;
      for (std::uint64_t d = 0; d <= k && ok; ++d) {
        ++checks;
        const Point jx = sc.objective.resolvent(sc.schedule.gamma_double(d), x);
        ok = sc.space.distance(x, jx) <= eps;
      }
      near_fixed[i] = ok ? 1 : -1;
    }
    return near_fixed[i] == 1;
  };

  std::optional<std::uint64_t> found;
  for (std::uint64_t N = 0; N <= search_cap && !found; ++N) {
    const std::uint64_t hi = window_end(N, g);
    runner.extend_to(hi);
    bool ok = true;
    for (std::uint64_t i = N; i <= hi && ok; ++i) ok = point_ok(i);
    if (ok && window_oscillation_ok(runner, N, hi, eps, checks)) found = N;
  }
  if (window_checks) *window_checks += checks;
  return found;
}

TrialReport certify_psi(const Scenario& sc, std::uint64_t k, const CounterexampleFn& g,
                        const VerifyOptions& options) {
  return certify(sc, k, g, options, false);
}

TrialReport certify_omega(const Scenario& sc, std::uint64_t k, const CounterexampleFn& g,
                          const VerifyOptions& options) {
  return certify(sc, k, g, options, true);
}

std::vector<TrialReport> run_trials(const std::vector<Scenario>& scenarios,
                                    const TrialGrid& grid) {
  struct Task {
    const Scenario* sc;
    bool omega;
    std::uint64_t k;
    const CounterexampleFn* g;
  };
  std::vector<Task> tasks;
  for (const auto& sc : scenarios) {
    for (bool omega : {false, true}) {
      const std::uint64_t k_max = omega ? grid.omega_k_max : grid.psi_k_max;
      for (std::uint64_t k = 0; k <= k_max; ++k) {
        for (const auto& g : grid.catalog) tasks.push_back({&sc, omega, k, &g});
      }
    }
  }

  std::vector<TrialReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      reports[i] = t.omega ? certify_omega(*t.sc, t.k, *t.g, grid.options)
                           : certify_psi(*t.sc, t.k, *t.g, grid.options);
    }
  };
  unsigned n_threads = grid.threads ? grid.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  return reports;
}

PropertyReport check_monitors(const Scenario& sc, std::uint64_t steps) {
  PropertyReport rep;
  rep.property = "monitors";
  rep.scenario_id = sc.id;
  const Trajectory traj = run(sc, steps);
  const auto& values = traj.values();
  for (std::uint64_t n = 0; n < traj.steps(); ++n) {
    ++rep.checks;
    if (!(values[n + 1] <= ExtendedReal(values[n].value() + 1e-10)) &&
        values[n].is_finite()) {
      if (rep.violations++ == 0) {
        rep.first_violation = "f increased at step " + std::to_string(n);
      }
    }
    if (traj.has_monitors()) {
      ++rep.checks;
      const MonitorRecord& m = traj.monitors()[n];
      if (m.min() < -1e-9) {
        if (rep.violations++ == 0) {
          rep.first_violation = "step " + std::to_string(n) + " residuals " +
                                fmt(m.fejer_step) + " " + fmt(m.descent) + " " +
                                fmt(m.distance_decrease) + " " + fmt(m.value_gap);
        }
      }
    } else {
      ++rep.skipped;
    }
  }
  return rep;
}

PropertyReport check_liminf_modulus(const Scenario& sc, std::uint64_t k_max,
                                    const std::vector<std::uint64_t>& Ls) {
  PropertyReport rep;
  rep.property = "liminf_modulus";
  rep.scenario_id = sc.id;
  PpaRunner runner(sc);
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    for (std::uint64_t L : Ls) {
      const Nat hi = delta_liminf(sc.b, Nat(k), Nat(L));
      if (hi + 1 > kMaxSteps) {
        ++rep.skipped;
        continue;
      }
      ++rep.checks;
      const auto end = hi.convert_to<std::uint64_t>();
      runner.extend_to(end + 1);
      const auto& pts = runner.trajectory().points();
      bool found = false;
      for (std::uint64_t N = L; N <= end && !found; ++N) {
        found = sc.space.distance(pts[N], pts[N + 1]) <= threshold(k) + 1e-10;
      }
      if (!found && rep.violations++ == 0) {
        rep.first_violation = "k=" + std::to_string(k) + " L=" + std::to_string(L) +
                              ": no small step in [L, " + hi.str() + "]";
      }
    }
  }
  return rep;
}

PropertyReport check_value_rate(const Scenario& sc, std::uint64_t k_max,
                                std::uint64_t max_index) {
  PropertyReport rep;
  rep.property = "value_rate";
  rep.scenario_id = sc.id;
  PpaRunner runner(sc);
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    Nat beta;
    try {
      beta = beta_rate(sc.b, sc.schedule.theta(), Nat(k));
    } catch (const MagnitudeLimitExceeded&) {
      ++rep.skipped;
      continue;
    }
    if (beta > max_index) {
      ++rep.skipped;
      continue;
    }
    const auto b0 = beta.convert_to<std::uint64_t>();
    for (std::uint64_t n : {b0, b0 + 1, b0 + 2, b0 + 5, b0 + 10, b0 + 50, 2 * b0 + 1}) {
      ++rep.checks;
      runner.extend_to(n);
      const ExtendedReal v = runner.trajectory().values()[n];
      const double gap = v.value() - sc.objective.known_min_value();
      if (!(v.is_finite() && gap <= threshold(k) + 1e-9) && rep.violations++ == 0) {
        rep.first_violation = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                              " gap " + fmt(gap) + " beta " + beta.str();
      }
    }
  }
  return rep;
}

PropertyReport check_approx_points(const Scenario& sc, std::uint64_t k_max,
                                   std::uint64_t search_cap) {
  PropertyReport rep;
  rep.property = "approx_points";
  rep.scenario_id = sc.id;
  PpaRunner runner(sc);
  const BoundContext ctx = sc.bound_context();
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    ++rep.checks;
    const Nat phi = approx_point_modulus(ctx, Nat(k));
    std::optional<std::uint64_t> found;
    for (std::uint64_t N = 0; N <= search_cap && Nat(N) <= phi && !found; ++N) {
      if (af_membership(sc, runner.point(N), k)) found = N;
    }
    if (!found && rep.violations++ == 0) {
      rep.first_violation = "k=" + std::to_string(k) + ": no AF_k iterate up to Phi = " +
                            phi.str() + " (search cap " + std::to_string(search_cap) + ")";
    }
  }
  return rep;
}

PropertyReport check_uniform_fejer(const Scenario& sc, std::uint64_t samples) {
  PropertyReport rep;
  rep.property = "uniform_fejer";
  rep.scenario_id = sc.id;
  if (!sc.objective.known_minimizer()) {
    rep.skipped = samples;
    return rep;
  }
  std::mt19937_64 rng(sc.seed ^ 0xfe1e'12ULL);
  std::uniform_int_distribution<std::uint64_t> nm(0, 20), rr(0, 10);
  PpaRunner runner(sc);
  runner.extend_to(40);
  const auto& pts = runner.trajectory().points();
  const std::uint64_t max_attempts = samples * 200;
  for (std::uint64_t attempt = 0; rep.checks < samples && attempt < max_attempts; ++attempt) {
    const std::uint64_t n = nm(rng), m = nm(rng), r = rr(rng);
    const auto chi = fejer_modulus(Nat(n), Nat(m), Nat(r)).convert_to<std::uint64_t>();
    const Point q = sample_near_minimizer(sc, rng);
    if (!af_membership(sc, q, chi, 0.0)) continue;
    ++rep.checks;
    const double base = sc.space.distance(pts[n], q) + threshold(r) + 1e-9;
    for (std::uint64_t l = 0; l <= m; ++l) {
      if (sc.space.distance(pts[n + l], q) >= base) {
        if (rep.violations++ == 0) {
          rep.first_violation = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                " r=" + std::to_string(r) + " l=" + std::to_string(l);
        }
        break;
      }
    }
  }
  rep.skipped = samples - rep.checks;
  return rep;
}

PropertyReport check_uniform_closedness(const Scenario& sc, std::uint64_t samples) {
  PropertyReport rep;
  rep.property = "uniform_closedness";
  rep.scenario_id = sc.id;
  if (!sc.objective.known_minimizer()) {
    rep.skipped = samples;
    return rep;
  }
  std::mt19937_64 rng(sc.seed ^ 0xc105'edULL);
  std::uniform_int_distribution<std::uint64_t> kk(0, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::uint64_t max_attempts = samples * 200;
  for (std::uint64_t attempt = 0; rep.checks < samples && attempt < max_attempts; ++attempt) {
    const std::uint64_t k = kk(rng);
    const auto [delta_f, omega_f] = closedness_moduli(Nat(k));
    const Point q = sample_near_minimizer(sc, rng);
    if (!af_membership(sc, q, delta_f.convert_to<std::uint64_t>(), 0.0)) continue;
    ++rep.checks;
    // Half of the perturbations sit exactly on the sphere of radius 1/(omega_F+1).
    const double radius = 1.0 / (omega_f.convert_to<double>() + 1.0);
    const double len = (attempt % 2 == 0) ? radius : radius * unit(rng);
    const Point p = offset(q, unit_direction(q.dimension(), rng), len);
    if (!af_membership(sc, p, k, 1e-9) && rep.violations++ == 0) {
      rep.first_violation = "k=" + std::to_string(k);
    }
  }
  rep.skipped = samples - rep.checks;
  return rep;
}

}  // namespace ppa
