// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ppa/ppa.h"

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace {

const std::string kSource = PPA_SOURCE_DIR;

struct Str {
  char* s = nullptr;
  ~Str() { ppa_string_free(s); }
  nlohmann::json json() const { return nlohmann::json::parse(s); }
};

}  // namespace

TEST_CASE("load, run and read back") {
  ppa_scenario* sc = nullptr;
  REQUIRE(ppa_scenario_load((kSource + "/scenarios/quad2d_const.json").c_str(), &sc) == PPA_OK);
  CHECK(std::string(ppa_scenario_id(sc)) == "quad2d_const");
  CHECK(ppa_scenario_dimension(sc) == 2);

  ppa_trajectory* t = nullptr;
  REQUIRE(ppa_run(sc, 10, &t) == PPA_OK);
  ppa_scenario_free(sc);  // the trajectory keeps its own copy
  CHECK(ppa_trajectory_steps(t) == 10);
  double x[2];
  REQUIRE(ppa_trajectory_point(t, 10, x) == PPA_OK);
  CHECK(std::abs(x[0] - std::ldexp(1.0, -10)) < 1e-15);
  double f = 0;
  REQUIRE(ppa_trajectory_value(t, 1, &f) == PPA_OK);
  CHECK(f == 0.125);
  CHECK(ppa_trajectory_point(t, 11, x) == PPA_ERR_INVALID_ARGUMENT);

  Str csv;
  REQUIRE(ppa_trajectory_serialize(t, PPA_FORMAT_CSV, &csv.s) == PPA_OK);
  CHECK(std::string(csv.s).rfind("step,x0,x1,f,", 0) == 0);
  ppa_trajectory_free(t);
}

TEST_CASE("config errors carry the field") {
  ppa_scenario* sc = nullptr;
  const char* doc = R"({"space":{"kind":"euclidean","dimension":1},
    "objective":{"kind":"l1_norm","parameters":{"scale":1},"known_min_value":0},
    "schedule":{"kind":"constant","c":"1"},"start":[1],"b":"1/0","seed":0})";
  CHECK(ppa_scenario_parse(doc, &sc) == PPA_ERR_CONFIG);
  CHECK(sc == nullptr);
  CHECK(std::string(ppa_last_error_field()) == "b");
  CHECK(std::string(ppa_last_error()).find("zero") != std::string::npos);

  CHECK(ppa_scenario_parse("{not json", &sc) == PPA_ERR_CONFIG);
  CHECK(ppa_scenario_load("/nonexistent/x.json", &sc) == PPA_ERR_IO);
  CHECK(ppa_scenario_parse(nullptr, &sc) == PPA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("round trip through JSON text") {
  ppa_scenario* sc = nullptr;
  REQUIRE(ppa_scenario_load((kSource + "/scenarios/ball2d_const.json").c_str(), &sc) == PPA_OK);
  Str a;
  REQUIRE(ppa_scenario_to_json(sc, &a.s) == PPA_OK);
  ppa_scenario* again = nullptr;
  REQUIRE(ppa_scenario_parse(a.s, &again) == PPA_OK);
  Str b;
  REQUIRE(ppa_scenario_to_json(again, &b.s) == PPA_OK);
  CHECK(std::string(a.s) == std::string(b.s));
  ppa_scenario_free(sc);
  ppa_scenario_free(again);
}

TEST_CASE("moduli report") {
  ppa_scenario* sc = nullptr;
  REQUIRE(ppa_scenario_load((kSource + "/tests/data/handcheck.json").c_str(), &sc) == PPA_OK);
  ppa_moduli_request req{0, 0, 0, 0, 0, nullptr, 0};
  Str r;
  REQUIRE(ppa_moduli_report(sc, &req, &r.s) == PPA_OK);
  CHECK(r.json()["psi"] == "2");
  CHECK(r.json()["omega"] == "8");
  req.g = "bogus";
  Str bad;
  CHECK(ppa_moduli_report(sc, &req, &bad.s) == PPA_ERR_CONFIG);
  CHECK(std::string(ppa_last_error_field()) == "g");
  ppa_scenario_free(sc);
}

TEST_CASE("verify a scenario set") {
  ppa_scenario_set* set = nullptr;
  REQUIRE(ppa_scenario_set_load((kSource + "/scenarios").c_str(), &set) == PPA_OK);
  CHECK(ppa_scenario_set_size(set) == 10);
  CHECK(ppa_scenario_set_get(set, 10) == nullptr);
  ppa_verify_options opt;
  ppa_verify_options_init(&opt);
  CHECK(opt.psi_k_max == 5);
  CHECK(opt.omega_k_max == 3);
  opt.psi_k_max = 1;
  opt.omega_k_max = 0;
  const char* gs[] = {"const:1", "doubling"};
  opt.catalog = gs;
  opt.catalog_size = 2;
  Str out;
  int all = 0;
  REQUIRE(ppa_verify(set, &opt, &out.s, &all) == PPA_OK);
  CHECK(all == 1);
  CHECK(out.json().size() == 10 * (2 + 1) * 2);
  ppa_scenario_set_free(set);
}

TEST_CASE("cover table") {
  Str t;
  REQUIRE(ppa_cover_table(1, "1", 2, &t.s) == PPA_OK);
  CHECK(t.json()["table"][0]["alpha"] == "2");
  Str bad;
  CHECK(ppa_cover_table(1, "-1", 2, &bad.s) == PPA_ERR_CONFIG);
}
