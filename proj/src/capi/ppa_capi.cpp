#include "ppa/ppa.h"

#include "ppa/config.hpp"
#include "ppa/error.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

struct ppa_scenario {
  ppa::Scenario sc;
};

struct ppa_scenario_set {
  std::vector<std::unique_ptr<ppa_scenario>> items;
};

struct ppa_trajectory {
  ppa_scenario owner;  // a copy, so the trajectory outlives the scenario handle
  ppa::Trajectory traj;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;
thread_local std::int64_t g_step = -1;

void clear() {
  g_error.clear();
  g_field.clear();
  g_step = -1;
}

ppa_status status_of(ppa::ErrorCode code) {
  switch (code) {
    case ppa::ErrorCode::invalid_argument: return PPA_ERR_INVALID_ARGUMENT;
    case ppa::ErrorCode::dimension_mismatch: return PPA_ERR_DIMENSION_MISMATCH;
    case ppa::ErrorCode::solver_divergence: return PPA_ERR_SOLVER_DIVERGENCE;
    case ppa::ErrorCode::scan_limit: return PPA_ERR_SCAN_LIMIT;
    case ppa::ErrorCode::magnitude_limit: return PPA_ERR_MAGNITUDE_LIMIT;
    case ppa::ErrorCode::depth_limit: return PPA_ERR_DEPTH_LIMIT;
    case ppa::ErrorCode::config: return PPA_ERR_CONFIG;
    case ppa::ErrorCode::io: return PPA_ERR_IO;
  }
  return PPA_ERR_INTERNAL;
}

template <class F>
ppa_status guarded(F&& body) {
  clear();
  try {
    body();
    return PPA_OK;
  } catch (const ppa::ConfigError& e) {
    g_error = e.what();
    g_field = e.field();
    return PPA_ERR_CONFIG;
  } catch (const ppa::StepError& e) {
    g_error = e.what();
    g_step = static_cast<std::int64_t>(e.step());
    return PPA_ERR_STEP;
  } catch (const ppa::Error& e) {
    g_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_error = e.what();
    return PPA_ERR_CONFIG;
  } catch (const std::exception& e) {
    g_error = e.what();
    return PPA_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown error";
    return PPA_ERR_INTERNAL;
  }
}

ppa_status null_argument(const char* what) {
  clear();
  g_error = std::string("null argument: ") + what;
  return PPA_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ppa::TrajectoryFormat format_of(ppa_format f) {
  if (f == PPA_FORMAT_JSON) return ppa::TrajectoryFormat::json;
  if (f == PPA_FORMAT_CSV) return ppa::TrajectoryFormat::csv;
  throw ppa::InvalidArgument("unknown trajectory format");
}

}  // namespace

extern "C" {

const char* ppa_last_error(void) { return g_error.c_str(); }
const char* ppa_last_error_field(void) { return g_field.c_str(); }
int64_t ppa_last_error_step(void) { return g_step; }
const char* ppa_version(void) { return "1.0.0"; }
void ppa_string_free(char* s) { std::free(s); }

ppa_status ppa_scenario_parse(const char* json_text, ppa_scenario** out) {
  if (!json_text || !out) return null_argument("json_text/out");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ppa::ConfigError("", e.what());
    }
    *out = new ppa_scenario{ppa::scenario_from_json(doc, "scenario")};
  });
}

ppa_status ppa_scenario_load(const char* path, ppa_scenario** out) {
  if (!path || !out) return null_argument("path/out");
  return guarded([&] { *out = new ppa_scenario{ppa::load_scenario(path)}; });
}

void ppa_scenario_free(ppa_scenario* sc) { delete sc; }

ppa_status ppa_scenario_to_json(const ppa_scenario* sc, char** out) {
  if (!sc || !out) return null_argument("scenario/out");
  return guarded([&] { *out = dup(ppa::scenario_to_json(sc->sc).dump(2)); });
}

const char* ppa_scenario_id(const ppa_scenario* sc) { return sc ? sc->sc.id.c_str() : ""; }

size_t ppa_scenario_dimension(const ppa_scenario* sc) {
  return sc ? sc->sc.space.dimension() : 0;
}

ppa_status ppa_scenario_set_load(const char* path, ppa_scenario_set** out) {
  if (!path || !out) return null_argument("path/out");
  return guarded([&] {
    auto set = std::make_unique<ppa_scenario_set>();
    for (auto& sc : ppa::load_scenarios(path)) {
      set->items.push_back(std::make_unique<ppa_scenario>(ppa_scenario{std::move(sc)}));
    }
    *out = set.release();
  });
}

void ppa_scenario_set_free(ppa_scenario_set* set) { delete set; }

size_t ppa_scenario_set_size(const ppa_scenario_set* set) {
  return set ? set->items.size() : 0;
}

const ppa_scenario* ppa_scenario_set_get(const ppa_scenario_set* set, size_t i) {
  if (!set || i >= set->items.size()) return nullptr;
  return set->items[i].get();
}

ppa_status ppa_run(const ppa_scenario* sc, uint64_t steps, ppa_trajectory** out) {
  if (!sc || !out) return null_argument("scenario/out");
  return guarded([&] {
    auto t = std::make_unique<ppa_trajectory>(ppa_trajectory{*sc, ppa::Trajectory{}});
    t->traj = ppa::run(t->owner.sc, steps);
    *out = t.release();
  });
}

void ppa_trajectory_free(ppa_trajectory* traj) { delete traj; }

uint64_t ppa_trajectory_steps(const ppa_trajectory* traj) {
  return traj ? traj->traj.steps() : 0;
}

ppa_status ppa_trajectory_point(const ppa_trajectory* traj, uint64_t n, double* coords) {
  if (!traj || !coords) return null_argument("trajectory/coords");
  return guarded([&] {
    if (n > traj->traj.steps()) throw ppa::InvalidArgument("index beyond trajectory end");
    const auto c = traj->traj.points()[n].coords();
    std::copy(c.begin(), c.end(), coords);
  });
}

ppa_status ppa_trajectory_value(const ppa_trajectory* traj, uint64_t n, double* value) {
  if (!traj || !value) return null_argument("trajectory/value");
  return guarded([&] {
    if (n > traj->traj.steps()) throw ppa::InvalidArgument("index beyond trajectory end");
    *value = traj->traj.values()[n].value();
  });
}

ppa_status ppa_trajectory_serialize(const ppa_trajectory* traj, ppa_format format, char** out) {
  if (!traj || !out) return null_argument("trajectory/out");
  return guarded([&] {
    std::ostringstream os;
    ppa::write_trajectory(os, traj->owner.sc, traj->traj, format_of(format));
    *out = dup(os.str());
  });
}

ppa_status ppa_trajectory_write(const ppa_trajectory* traj, ppa_format format,
                                const char* path) {
  if (!traj) return null_argument("trajectory");
  return guarded([&] {
    const auto fmt = format_of(format);
    if (!path || std::strcmp(path, "-") == 0) {
      ppa::write_trajectory(std::cout, traj->owner.sc, traj->traj, fmt);
      std::cout.flush();
      return;
    }
    std::ofstream file(path, std::ios::out | std::ios::trunc);
    if (!file) throw ppa::IoError(std::string("cannot open ") + path + " for writing");
    ppa::write_trajectory(file, traj->owner.sc, traj->traj, fmt);
    file.close();
    if (!file) throw ppa::IoError(std::string("write to ") + path + " failed");
  });
}

ppa_status ppa_moduli_report(const ppa_scenario* sc, const ppa_moduli_request* req,
                             char** json_out) {
  if (!sc || !req || !json_out) return null_argument("scenario/request/out");
  return guarded([&] {
    ppa::ModuliRequest r;
    r.k = req->k;
    r.L = req->L;
    r.n = req->n;
    r.m = req->m;
    r.r = req->r;
    r.force = req->force != 0;
    if (req->g) {
      try {
        r.g = ppa::CounterexampleFn::parse(req->g);
      } catch (const std::exception& e) {
        throw ppa::ConfigError("g", e.what());
      }
    }
    *json_out = dup(ppa::moduli_report(sc->sc, r).dump(2));
  });
}

void ppa_verify_options_init(ppa_verify_options* options) {
  if (!options) return;
  const ppa::TrialGrid grid;
  options->psi_k_max = grid.psi_k_max;
  options->omega_k_max = grid.omega_k_max;
  options->search_cap = grid.options.search_cap;
  options->catalog = nullptr;
  options->catalog_size = 0;
  options->threads = 0;
}

ppa_status ppa_verify(const ppa_scenario_set* set, const ppa_verify_options* options,
                      char** json_out, int* all_hold) {
  if (!set || !json_out) return null_argument("set/out");
  return guarded([&] {
    ppa::TrialGrid grid;
    if (options) {
      grid.psi_k_max = options->psi_k_max;
      grid.omega_k_max = options->omega_k_max;
      grid.options.search_cap = options->search_cap;
      grid.threads = options->threads;
      if (options->catalog && options->catalog_size) {
        grid.catalog.clear();
        for (size_t i = 0; i < options->catalog_size; ++i) {
          try {
            grid.catalog.push_back(ppa::CounterexampleFn::parse(options->catalog[i]));
          } catch (const std::exception& e) {
            throw ppa::ConfigError("g", e.what());
          }
        }
      }
    }
    std::vector<ppa::Scenario> scenarios;
    for (const auto& item : set->items) scenarios.push_back(item->sc);
    const auto reports = ppa::run_trials(scenarios, grid);
    nlohmann::json arr = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : reports) {
      arr.push_back(r.to_json());
      ok = ok && r.holds;
    }
    *json_out = dup(arr.dump(2));
    if (all_hold) *all_hold = ok ? 1 : 0;
  });
}

ppa_status ppa_cover_table(size_t dimension, const char* b, uint64_t k_max, char** json_out) {
  if (!b || !json_out) return null_argument("b/out");
  return guarded([&] {
    ppa::Rational radius;
    try {
      radius = ppa::parse_rational(b);
    } catch (const ppa::Error& e) {
      throw ppa::ConfigError("b", e.what());
    }
    if (radius <= 0) throw ppa::ConfigError("b", "must be positive");
    if (dimension == 0) throw ppa::ConfigError("dimension", "must be positive");
    *json_out = dup(ppa::cover_table(dimension, radius, k_max).dump(2));
  });
}

}  // extern "C"
