// ppa: command-line front end over the C API.

#include "ppa/ppa.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kIo = 3 };

int exit_for(ppa_status s) {
  switch (s) {
    case PPA_OK: return kOk;
    case PPA_ERR_CONFIG:
    case PPA_ERR_INVALID_ARGUMENT:
    case PPA_ERR_DIMENSION_MISMATCH: return kConfig;
    case PPA_ERR_IO: return kIo;
    default: return kFailed;
  }
}

int report(ppa_status s) {
  std::cerr << "ppa: error: " << ppa_last_error();
  if (*ppa_last_error_field()) std::cerr << " [field: " << ppa_last_error_field() << "]";
  if (ppa_last_error_step() >= 0) std::cerr << " [step " << ppa_last_error_step() << "]";
  std::cerr << '\n';
  return exit_for(s);
}

struct Owned {
  char* s = nullptr;
  ~Owned() { ppa_string_free(s); }
};

// Writes text to `out`, or stdout when empty or "-".
int emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream file(out, std::ios::out | std::ios::trunc);
  if (!file) {
    std::cerr << "ppa: error: cannot open " << out << " for writing\n";
    return kIo;
  }
  file << text;
  file.close();
  if (!file) {
    std::cerr << "ppa: error: write to " << out << " failed\n";
    return kIo;
  }
  return kOk;
}

using ScenarioPtr = std::unique_ptr<ppa_scenario, decltype(&ppa_scenario_free)>;

std::optional<ScenarioPtr> load_one(const std::string& path, int& code) {
  ppa_scenario* sc = nullptr;
  const ppa_status s = ppa_scenario_load(path.c_str(), &sc);
  if (s != PPA_OK) {
    code = report(s);
    return std::nullopt;
  }
  return ScenarioPtr(sc, &ppa_scenario_free);
}

std::string value_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + value_text(e);
    return s;
  }
  if (v.is_object() && v.contains("refused")) {
    return "refused (" + v["refused"].get<std::string>() + ")";
  }
  return v.dump();
}

struct ModuliArgs {
  std::string config, g, format = "plain", out;
  std::uint64_t k = 0, L = 0, n = 0, m = 0, r = 0;
  bool force = false;
};

int cmd_moduli(const ModuliArgs& a) {
  int code = kOk;
  auto sc = load_one(a.config, code);
  if (!sc) return code;
  ppa_moduli_request req{a.k, a.L, a.n, a.m, a.r, a.g.empty() ? nullptr : a.g.c_str(),
                         a.force ? 1 : 0};
  Owned json;
  if (const ppa_status s = ppa_moduli_report(sc->get(), &req, &json.s); s != PPA_OK) {
    return report(s);
  }
  const auto doc = nlohmann::json::parse(json.s);
  bool refused = false;
  for (const auto& [_, v] : doc.items()) refused = refused || (v.is_object() && v.contains("refused"));

  std::string text;
  if (a.format == "json") {
    text = doc.dump(2) + "\n";
  } else {
    if (doc.contains("warnings")) {
      for (const auto& w : doc["warnings"]) std::cerr << "ppa: warning: " << w.get<std::string>() << '\n';
    }
    const std::pair<const char*, std::string> rows[] = {
        {"delta_liminf", "delta_liminf(k=" + std::to_string(a.k) + ",L=" + std::to_string(a.L) + ")"},
        {"beta", "beta"},
        {"closedness", "closedness"},
        {"fejer", "fejer(n=" + std::to_string(a.n) + ",m=" + std::to_string(a.m) +
                      ",r=" + std::to_string(a.r) + ")"},
        {"alpha", "alpha"},
        {"phi", "phi"},
        {"psi", "psi"},
        {"omega", "omega"},
    };
    text = "scenario: " + doc["scenario"].get<std::string>() + "\nk: " + std::to_string(a.k) +
           "\ng: " + doc["g"].get<std::string>() + "\n";
    for (const auto& [key, label] : rows) text += label + ": " + value_text(doc[key]) + "\n";
  }
  if (const int e = emit(a.out, text); e != kOk) return e;
  return refused ? kFailed : kOk;
}

struct RunArgs {
  std::string config, format = "csv", out;
  std::uint64_t steps = 100;
};

int cmd_run(const RunArgs& a) {
  int code = kOk;
  auto sc = load_one(a.config, code);
  if (!sc) return code;
  ppa_trajectory* traj = nullptr;
  if (const ppa_status s = ppa_run(sc->get(), a.steps, &traj); s != PPA_OK) return report(s);
  std::unique_ptr<ppa_trajectory, decltype(&ppa_trajectory_free)> guard(traj, &ppa_trajectory_free);
  const ppa_format fmt = a.format == "json" ? PPA_FORMAT_JSON : PPA_FORMAT_CSV;
  const ppa_status s = ppa_trajectory_write(traj, fmt, a.out.empty() ? nullptr : a.out.c_str());
  return s == PPA_OK ? kOk : report(s);
}

struct VerifyArgs {
  std::string config, out;
  std::uint64_t k_max = 5, omega_k_max = 3, search_cap = 100'000;
  std::vector<std::string> g;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a) {
  ppa_scenario_set* set = nullptr;
  if (const ppa_status s = ppa_scenario_set_load(a.config.c_str(), &set); s != PPA_OK) {
    return report(s);
  }
  std::unique_ptr<ppa_scenario_set, decltype(&ppa_scenario_set_free)> guard(set, &ppa_scenario_set_free);
  if (ppa_scenario_set_size(set) == 0) {
    std::cerr << "ppa: error: no scenarios in " << a.config << '\n';
    return kConfig;
  }
  std::vector<const char*> catalog;
  for (const auto& g : a.g) catalog.push_back(g.c_str());
  ppa_verify_options opt;
  ppa_verify_options_init(&opt);
  opt.psi_k_max = a.k_max;
  opt.omega_k_max = a.omega_k_max;
  opt.search_cap = a.search_cap;
  opt.threads = a.threads;
  opt.catalog = catalog.empty() ? nullptr : catalog.data();
  opt.catalog_size = catalog.size();

  Owned json;
  int all_hold = 0;
  if (const ppa_status s = ppa_verify(set, &opt, &json.s, &all_hold); s != PPA_OK) {
    return report(s);
  }
  if (const int e = emit(a.out, std::string(json.s) + "\n"); e != kOk) return e;
  if (!all_hold) {
    std::size_t failed = 0;
    for (const auto& r : nlohmann::json::parse(json.s)) failed += r["holds"].get<bool>() ? 0 : 1;
    std::cerr << "ppa: " << failed << " trial(s) failed\n";
    return kFailed;
  }
  return kOk;
}

struct CoverArgs {
  std::string config, b, format = "plain", out;
  std::size_t dimension = 0;
  std::uint64_t k_max = 10;
};

int cmd_cover(const CoverArgs& a) {
  std::size_t dim = a.dimension;
  std::string b = a.b;
  if (!a.config.empty()) {
    int code = kOk;
    auto sc = load_one(a.config, code);
    if (!sc) return code;
    Owned cfg;
    if (const ppa_status s = ppa_scenario_to_json(sc->get(), &cfg.s); s != PPA_OK) return report(s);
    const auto doc = nlohmann::json::parse(cfg.s);
    if (dim == 0) dim = ppa_scenario_dimension(sc->get());
    if (b.empty()) b = doc["b"].get<std::string>();
  }
  if (dim == 0 || b.empty()) {
    std::cerr << "ppa: error: cover needs --config or both --dimension and --b\n";
    return kConfig;
  }
  Owned json;
  if (const ppa_status s = ppa_cover_table(dim, b.c_str(), a.k_max, &json.s); s != PPA_OK) {
    return report(s);
  }
  const auto doc = nlohmann::json::parse(json.s);
  std::string text;
  if (a.format == "json") {
    text = doc.dump(2) + "\n";
  } else {
    text = "# dimension " + std::to_string(dim) + ", b = " + doc["b"].get<std::string>() +
           ", sqrt bound " + doc["sigma"].get<std::string>() + "\nk alpha\n";
    for (const auto& row : doc["table"]) {
      text += std::to_string(row["k"].get<std::uint64_t>()) + " " +
              row["alpha"].get<std::string>() + "\n";
    }
  }
  return emit(a.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal point algorithm runner and rate certifier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ppa_version()));

  ModuliArgs moduli;
  auto* m = app.add_subcommand("moduli", "Print every modulus for a scenario");
  m->add_option("--config", moduli.config, "Scenario JSON")->required();
  m->add_option("--k", moduli.k, "Precision index k");
  m->add_option("--g", moduli.g, "Counterexample function (const:c, id+c, doubling, table:..., JSON)");
  m->add_option("--L", moduli.L, "Start index for the liminf modulus");
  m->add_option("--n", moduli.n, "Fejer modulus n");
  m->add_option("--m", moduli.m, "Fejer modulus m");
  m->add_option("--r", moduli.r, "Fejer modulus r");
  m->add_flag("--force", moduli.force, "Lift the recursion depth guard");
  m->add_option("--format", moduli.format, "Output format")->check(CLI::IsMember({"plain", "json"}));
  m->add_option("--out", moduli.out, "Output file (default stdout)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run the iteration and export the trajectory");
  r->add_option("--config", run.config, "Scenario JSON")->required();
  r->add_option("--steps", run.steps, "Number of steps")->check(CLI::Range(0, 1'000'000));
  r->add_option("--format", run.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  r->add_option("--out", run.out, "Output file (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Certify metastability rates over a trial grid");
  v->add_option("--config", verify.config, "Scenario JSON or a directory of them")->required();
  v->add_option("--k-max", verify.k_max, "Largest k for psi trials");
  v->add_option("--omega-k-max", verify.omega_k_max, "Largest k for omega trials");
  v->add_option("--g", verify.g, "Counterexample functions (repeatable; default catalog)");
  v->add_option("--search-cap", verify.search_cap, "Largest witness N searched");
  v->add_option("--threads", verify.threads, "Worker threads (0: all cores)");
  v->add_option("--out", verify.out, "Report file (default stdout)");

  CoverArgs cover;
  auto* c = app.add_subcommand("cover", "Print the total boundedness modulus of a ball");
  c->add_option("--config", cover.config, "Take dimension and b from a scenario");
  c->add_option("--dimension", cover.dimension, "Dimension");
  c->add_option("--b", cover.b, "Radius as a rational string");
  c->add_option("--k-max", cover.k_max, "Largest k");
  c->add_option("--format", cover.format, "Output format")->check(CLI::IsMember({"plain", "json"}));
  c->add_option("--out", cover.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  if (*m) return cmd_moduli(moduli);
  if (*r) return cmd_run(run);
  if (*v) return cmd_verify(verify);
  if (*c) return cmd_cover(cover);
  return kConfig;
}
