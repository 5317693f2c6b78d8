// Drives the ppa executable end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kSource = PPA_SOURCE_DIR;
const std::string kCli = PPA_CLI_PATH;

struct Result {
  int code = -1;
  std::string out;
};

// stdout only; stderr is folded in when `merge` is set.
Result sh(const std::string& args, bool merge = false) {
  const std::string cmd = kCli + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ppa_cli_test_" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("moduli on the hand-checked configuration") {
  const Result r = sh("moduli --config " + kSource + "/tests/data/handcheck.json --k 0");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "psi: 2"));
  CHECK(has_line(r.out, "omega: 8"));

  const Result k2 = sh("moduli --config " + kSource + "/tests/data/handcheck.json --k 2");
  CHECK(has_line(k2.out, "closedness: 5 11"));

  const Result js = sh("moduli --config " + kSource + "/tests/data/handcheck.json --format json");
  CHECK(js.code == 0);
  CHECK(nlohmann::json::parse(js.out)["psi"] == "2");
}

TEST_CASE("moduli reports a refused recursion") {
  const Result r = sh("moduli --config " + kSource + "/scenarios/quad4d_const.json --k 0");
  CHECK(r.code == 1);
  CHECK(r.out.find("psi: refused") != std::string::npos);
}

TEST_CASE("malformed b exits 2 naming the field") {
  const auto path = scratch("bad_b.json");
  std::ifstream in(kSource + "/scenarios/quad2d_const.json");
  auto doc = nlohmann::json::parse(in);
  doc["b"] = "1/0";
  std::ofstream(path) << doc.dump();
  const Result r = sh("moduli --config " + path.string(), true);
  CHECK(r.code == 2);
  CHECK(r.out.find("field: b") != std::string::npos);
}

TEST_CASE("run writes the trajectory") {
  const Result r = sh("run --config " + kSource + "/scenarios/quad2d_const.json --steps 20");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = -1;  // header
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 21);

  const Result zero = sh("run --config " + kSource + "/scenarios/quad2d_const.json --steps 0");
  CHECK(zero.out == "step,x0,x1,f,fejer_step,descent,distance_decrease,value_gap\n0,1,0,0.5,,,,\n");

  const auto out = scratch("traj.json");
  const Result js = sh("run --config " + kSource + "/scenarios/quad2d_const.json --steps 5 --format json --out " +
                       out.string());
  CHECK(js.code == 0);
  std::ifstream f(out);
  CHECK(nlohmann::json::parse(f)["steps"].size() == 6);
}

TEST_CASE("run is deterministic") {
  const std::string cmd = "run --config " + kSource + "/scenarios/huber2d_const.json --steps 50";
  CHECK(sh(cmd).out == sh(cmd).out);
}

TEST_CASE("unwritable output exits 3") {
  const auto path = scratch("readonly.csv");
  std::ofstream(path) << "keep\n";
  chmod(path.c_str(), 0444);
  if (access(path.c_str(), W_OK) == 0) {
    MESSAGE("running with write access to read-only files; checking a missing directory instead");
    const Result r = sh("run --config " + kSource + "/scenarios/quad2d_const.json --steps 3 --out " +
                        path.string() + ".d/x/y.csv");
    CHECK(r.code == 3);
  } else {
    const Result r = sh("run --config " + kSource + "/scenarios/quad2d_const.json --steps 3 --out " +
                        path.string());
    CHECK(r.code == 3);
  }
}

TEST_CASE("verify the shipped suite") {
  const auto out = scratch("report.json");
  const Result r = sh("verify --config " + kSource + "/scenarios --out " + out.string());
  CHECK(r.code == 0);
  std::ifstream f(out);
  const auto report = nlohmann::json::parse(f);
  CHECK(report.size() == 10 * (6 + 4) * 4);
  for (const auto& t : report) CHECK(t["holds"] == true);
}

TEST_CASE("verify edge cases") {
  const auto empty = scratch("empty_dir");
  std::filesystem::create_directories(empty);
  const Result e = sh("verify --config " + empty.string(), true);
  CHECK(e.code == 2);
  CHECK(e.out.find("no scenarios") != std::string::npos);

  // Start far from the minimizer: b cannot be verified.
  const auto path = scratch("far.json");
  std::ifstream in(kSource + "/scenarios/quad2d_const.json");
  auto doc = nlohmann::json::parse(in);
  doc["start"] = {5, 0};
  std::ofstream(path) << doc.dump();
  const Result r = sh("verify --config " + path.string() + " --k-max 0 --omega-k-max 0 --g const:1");
  const auto report = nlohmann::json::parse(r.out);
  REQUIRE(report.size() == 2);
  CHECK(report[0]["warnings"][0] == "unverified-b");

  CHECK(sh("verify --config /no/such/dir").code == 3);
  CHECK(sh("verify").code == 2);
  CHECK(sh("frobnicate").code == 2);
}

TEST_CASE("cover table") {
  const Result r = sh("cover --dimension 2 --b 1 --k-max 2");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "0 9"));
  const Result c = sh("cover --config " + kSource + "/scenarios/quad2d_const.json --k-max 0");
  CHECK(has_line(c.out, "0 9"));
}
