#include <doctest.h>

#include "ppa/config.hpp"
#include "ppa/error.hpp"

#include <filesystem>
#include <sstream>

using namespace ppa;
using nlohmann::json;

namespace {

const std::filesystem::path kSource = PPA_SOURCE_DIR;

json base_doc() {
  return json::parse(R"({
    "space": {"kind": "euclidean", "dimension": 2},
    "objective": {"kind": "quadratic", "parameters": {"anchor": [0, 0], "weight": 1},
                  "known_min_value": 0, "known_minimizer": [0, 0]},
    "schedule": {"kind": "constant", "c": "1"},
    "start": [1, 0], "b": "1", "seed": 0
  })");
}

std::string field_of(const json& doc) {
  try {
    scenario_from_json(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("shipped scenarios load and round-trip") {
  const auto scenarios = load_scenarios(kSource / "scenarios");
  REQUIRE(scenarios.size() == 10);
  for (std::size_t i = 1; i < scenarios.size(); ++i) CHECK(scenarios[i - 1].id < scenarios[i].id);
  for (const auto& sc : scenarios) {
    const json once = scenario_to_json(sc);
    const Scenario again = scenario_from_json(once);
    CHECK(scenario_to_json(again) == once);
    CHECK(sc.b_verified());
  }
}

TEST_CASE("round-trip keeps custom theta and alpha") {
  json doc = base_doc();
  doc["schedule"]["theta"] = json::parse(R"({"op":"var"})");
  doc["alpha"] = json::parse(R"({"op":"const","value":"1"})");
  doc["b"] = "9/4";
  const Scenario sc = scenario_from_json(doc, "custom");
  CHECK(sc.id == "custom");
  CHECK(sc.b == Rational(9, 4));
  const json out = scenario_to_json(sc);
  CHECK(out["b"] == "9/4");
  CHECK(out["schedule"]["theta"] == doc["schedule"]["theta"]);
  CHECK(scenario_to_json(scenario_from_json(out)) == out);
}

TEST_CASE("config errors name the field") {
  json doc = base_doc();
  doc["b"] = "1/0";
  CHECK(field_of(doc) == "b");

  doc = base_doc();
  doc["colour"] = "red";
  CHECK(field_of(doc) == "colour");

  doc = base_doc();
  doc["objective"]["parameters"]["wieght"] = 1;
  CHECK(field_of(doc) == "objective.parameters.wieght");

  doc = base_doc();
  doc.erase("start");
  CHECK(field_of(doc) == "start");

  doc = base_doc();
  doc["start"] = {1, 2, 3};
  CHECK(field_of(doc) == "start");

  doc = base_doc();
  doc["b"] = 0.5;  // rationals travel as strings
  CHECK(field_of(doc) == "b");

  doc = base_doc();
  doc["schedule"]["c"] = "-1";
  CHECK(field_of(doc) == "schedule.c");

  doc = base_doc();
  doc["schedule"]["theta"] = json::parse(R"({"op":"const","value":0})");
  CHECK(field_of(doc) == "schedule.theta");

  doc = base_doc();
  doc["objective"]["known_min_value"] = 1;
  CHECK(field_of(doc) == "objective.known_min_value");

  doc = base_doc();
  doc["objective"]["known_minimizer"] = {1, 1};
  CHECK(field_of(doc) == "objective.known_minimizer");

  doc = base_doc();
  doc["space"]["kind"] = "hyperbolic";
  CHECK(field_of(doc) == "space.kind");

  doc = base_doc();
  doc["objective"]["kind"] = "smooth_custom";
  doc["objective"]["parameters"] = json::parse(R"({"family":"sinc"})");
  CHECK(field_of(doc) == "objective.parameters.family");

  CHECK(field_of(base_doc()) == "<accepted>");
}

TEST_CASE("missing files and empty directories") {
  CHECK_THROWS_AS(load_scenario(kSource / "no-such-file.json"), IoError);
  const auto empty = std::filesystem::temp_directory_path() / "ppa_empty_dir_test";
  std::filesystem::create_directories(empty);
  CHECK(load_scenarios(empty).empty());
  std::filesystem::remove_all(empty);
}

TEST_CASE("trajectory export") {
  const Scenario sc = load_scenario(kSource / "scenarios" / "quad2d_const.json");
  const Trajectory t = run(sc, 20);
  std::ostringstream csv;
  write_trajectory(csv, sc, t, TrajectoryFormat::csv);
  std::istringstream in(csv.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 22);
  CHECK(lines[0] == "step,x0,x1,f,fejer_step,descent,distance_decrease,value_gap");
  CHECK(lines[1].rfind("0,1,0,0.5,", 0) == 0);
  // f(x_n) = 2^-(2n+1): each row is a quarter of the previous.
  double prev = 0.0;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    std::stringstream ss(lines[n]);
    std::string cell;
    for (int c = 0; c < 4; ++c) std::getline(ss, cell, ',');
    const double f = std::stod(cell);
    if (n > 1) CHECK(f / prev == doctest::Approx(0.25).epsilon(1e-12));
    prev = f;
  }

  std::ostringstream js;
  write_trajectory(js, sc, run(sc, 0), TrajectoryFormat::json);
  const json doc = json::parse(js.str());
  REQUIRE(doc["steps"].size() == 1);
  CHECK(doc["steps"][0]["point"] == json({1.0, 0.0}));
  CHECK(doc["steps"][0]["residuals"].is_null());
}

TEST_CASE("moduli report") {
  const Scenario hand = load_scenario(kSource / "tests" / "data" / "handcheck.json");
  ModuliRequest req;
  const json r = moduli_report(hand, req);
  CHECK(r["psi"] == "2");
  CHECK(r["omega"] == "8");
  CHECK(r["phi"] == "2");
  CHECK(r["beta"] == "1");
  CHECK(r["delta_liminf"] == "0");

  req.k = 2;
  req.n = 2;
  req.m = 3;
  req.r = 1;
  const json r2 = moduli_report(hand, req);
  CHECK(r2["closedness"] == json({"5", "11"}));
  CHECK(r2["fejer"] == "6");

  // A real ball modulus is refused by the depth guard rather than hanging.
  const Scenario ball = load_scenario(kSource / "scenarios" / "quad4d_const.json");
  const json r3 = moduli_report(ball, ModuliRequest{});
  CHECK(r3["psi"].contains("refused"));
  CHECK(r3["alpha"].is_string());
}

TEST_CASE("cover table") {
  const json t = cover_table(2, Rational(1), 3);
  REQUIRE(t["table"].size() == 4);
  CHECK(t["table"][0]["alpha"] == "9");
  CHECK(t["sigma"] == "17/12");
}
