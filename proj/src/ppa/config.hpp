#ifndef PPA_CONFIG_HPP
#define PPA_CONFIG_HPP

#include "ppa/engine.hpp"
#include "ppa/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ppa {

// Scenario documents:
//   { "id"?: str,
//     "space": {"kind": "euclidean", "dimension": d},
//     "objective": {"kind", "parameters": {...}, "known_min_value",
//                   "known_minimizer"?: [..]},
//     "schedule": {"kind", "c": "p/q", "theta"?: AST, "bound"?: AST},
//     "start": [..], "b": "p/q", "seed": int, "alpha"?: AST }
// Unknown fields are rejected. Errors are ConfigError naming the field.
Scenario scenario_from_json(const nlohmann::json& doc, const std::string& fallback_id = "");
nlohmann::json scenario_to_json(const Scenario& sc);
Scenario load_scenario(const std::filesystem::path& path);
// A file, or every *.json in a directory (sorted by name).
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

enum class TrajectoryFormat { csv, json };
void write_trajectory(std::ostream& out, const Scenario& sc, const Trajectory& traj,
                      TrajectoryFormat format);

struct ModuliRequest {
  std::uint64_t k = 0;
  std::uint64_t L = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t r = 0;
  std::optional<CounterexampleFn> g;  // defaults to const:0
  bool force = false;
};

// Every modulus for the scenario, as exact decimal strings. Values that
// cannot be produced (depth or magnitude guards) appear as
// {"refused": reason}.
nlohmann::json moduli_report(const Scenario& sc, const ModuliRequest& request);

// alpha(k) for k = 0..k_max on the ball of radius b.
nlohmann::json cover_table(std::size_t dimension, const Rational& b, std::uint64_t k_max);

}  // namespace ppa

#endif  // PPA_CONFIG_HPP
