#include "rotset/cli.hpp"
#include "rotset/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rotset;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rotset_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("zoo prints one JSON object per line") {
  const auto r = run({"zoo"});
  CHECK(r.code == kExitOk);
  std::istringstream in(r.out);
  int lines = 0;
  for (std::string line; std::getline(in, line); ++lines) {
    const json j = json::parse(line);
    CHECK(j.contains("name"));
    CHECK(j.contains("params"));
    CHECK(j.contains("expected_rotation_set"));
  }
  CHECK(lines == 8);
  CHECK(run({"zoo", "list"}).out == r.out);
  CHECK(run({"zoo", "dance"}).code == kExitBadInput);
}

TEST_CASE("out-dir collects the report and the plot") {
  const fs::path dir = scratch("run1");
  fs::remove_all(dir);
  const auto r = run({"estimate", "--map", "hshear(0.25,0.5)", "--seed", "2", "--points", "30", "--iterates", "30",
                      "--out-dir", dir.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(json::parse(slurp(dir / "estimate.json"))["config"]["points"] == 30);
  CHECK(count(slurp(dir / "estimate.svg"), "<circle") == 30);
}

TEST_CASE("bad input exits with 2") {
  CHECK(run({}).code == kExitBadInput);
  CHECK(run({"estimate", "--map", "hshear(0.25", "--seed", "1"}).code == kExitBadInput);
  CHECK(run({"estimate", "--map", "hshear(0.25,0.5)"}).code == kExitBadInput);  // no seed
  CHECK(run({"estimate", "--map", "hshear(0.25,0.5)", "--seed", "1", "--mode", "magic"}).code == kExitBadInput);
  CHECK(run({"estimate", "--map", "hshear(0.25,0.5)", "--seed", "1", "--grid", "1"}).code == kExitBadInput);
  CHECK(run({"realize", "--map", "hshear(0.25,0.5)", "--vector", "1/0,0"}).code == kExitBadInput);
  CHECK(run({"chain", "--map", "identity", "--mode", "target", "--start", "99,0", "--grid", "8"}).code ==
        kExitBadInput);
  CHECK(run({"frobnicate"}).code == kExitBadInput);
}

TEST_CASE("estimate reports carry schema, config and timestamp") {
  const auto r = run({"estimate", "--map", "translate(0.5,0.25)", "--seed", "3", "--points", "50", "--iterates",
                      "20"});
  REQUIRE(r.code == kExitOk);
  const json j = r.report();
  CHECK(j["schema"] == "rotset/1");
  CHECK(j["seed"] == 3);
  CHECK(j["map"] == "translate(0.5,0.25)");
  CHECK(j.contains("timestamp"));
  CHECK(j["config"]["points"] == 50);
  CHECK(j["result"]["hull_vertices"].size() == 1);

  const auto quiet = run({"estimate", "--map", "translate(0.5,0.25)", "--seed", "3", "--no-timestamp"});
  CHECK_FALSE(quiet.report().contains("timestamp"));
}

TEST_CASE("identical runs give identical bytes") {
  const std::vector<std::string> args = {"estimate", "--map", "compose(vshear(0.3,0),hshear(0.3,0))",
                                         "--mode",   "all",   "--seed",
                                         "11",       "--points", "200",
                                         "--iterates", "100", "--samples",
                                         "5000",     "--grid", "16",
                                         "--no-timestamp"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("sample mode writes an SVG with one circle per sample") {
  const fs::path svg = scratch("shear.svg");
  const auto r = run({"estimate", "--map", "hshear(0.25,0.5)", "--seed", "5", "--svg", svg.string(),
                      "--mode", "all", "--iterates", "200", "--samples", "1000", "--grid", "32"});
  REQUIRE(r.code == kExitOk);
  const std::string text = slurp(svg);
  CHECK(count(text, "<circle") == 1000);
  CHECK(text.find("viewBox=\"0 0 800 800\"") != std::string::npos);
  CHECK(count(text, "<polyline") + count(text, "<polygon") >= 2);
  CHECK(r.report()["diagnostics"]["outer_contains_inner"] == true);
}

TEST_CASE("config file values sit under explicit flags") {
  const fs::path cfg = scratch("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"js({"map": "translate(0.5,0.25)", "seed": 9, "points": 7, "iterates": 3})js";
  }
  const auto r = run({"estimate", "--config", cfg.string(), "--points", "12", "--no-timestamp"});
  REQUIRE(r.code == kExitOk);
  const json j = r.report();
  CHECK(j["config"]["points"] == 12);
  CHECK(j["config"]["iterates"] == 3);
  CHECK(j["seed"] == 9);

  {
    std::ofstream f(cfg);
    f << R"js({"colour": "blue"})js";
  }
  CHECK(run({"estimate", "--config", cfg.string(), "--map", "identity", "--seed", "1"}).code == kExitBadInput);
}

TEST_CASE("chain command") {
  const auto found = run({"chain", "--map", "identity", "--mode", "periodic", "--grid", "16", "--epsilon", "0.125"});
  REQUIRE(found.code == kExitOk);
  const json j = found.report();
  CHECK(j["result"]["chain"]["length"] == 1);
  CHECK(j["result"]["chain"]["sound"] == true);
  CHECK(j["diagnostics"]["graph"]["cell_count"] == 256);

  const auto absent = run({"chain", "--map", "translate(0.44142135623730954,0)", "--grid", "64", "--epsilon",
                           "0.025", "--max-len", "50"});
  CHECK(absent.code == kExitAbsent);
  CHECK(absent.report()["result"]["chain"].is_null());

  const fs::path bin = scratch("g.rsgd");
  const auto target = run({"chain", "--map", "translate(1,0)", "--mode", "target", "--grid", "8", "--epsilon",
                           "0.125", "--disp", "3,0", "--export-graph", bin.string()});
  REQUIRE(target.code == kExitOk);
  CHECK(target.report()["result"]["chain"]["length"] == 3);
  CHECK(slurp(bin).substr(0, 4) == "RSGD");

  const auto comb = run({"chain", "--map", "compose(vshear(0.3,0),hshear(0.3,0))", "--mode", "combine", "--grid",
                         "32", "--epsilon", "0.1", "--max-len", "30", "--targets", "2,0;-1,0;0,1;0,-1"});
  REQUIRE(comb.code == kExitOk);
  CHECK(comb.report()["result"]["chain"]["displacement"] == json::array({0, 0}));
  CHECK(comb.report()["result"]["weights"] == json::array({1, 2, 1, 1}));
}

TEST_CASE("realize and verify-theorem exit codes") {
  const auto ok = run({"realize", "--map", "translate(0.5,0.25)", "--vector", "2/4,1/4"});
  REQUIRE(ok.code == kExitOk);
  CHECK(ok.report()["result"]["period"] == 4);

  CHECK(run({"realize", "--map", "hshear(0.25,0.5)", "--vector", "1,0"}).code == kExitAbsent);

  const auto fail = run({"verify-theorem", "--map", "translate(0.7071067811865476,0)", "--vector", "1/2,0",
                         "--seed", "1", "--points", "50", "--iterates", "50", "--samples", "100", "--grid", "16"});
  CHECK(fail.code == kExitAbsent);
  const json j = fail.report();
  CHECK(j["pass"] == false);
  CHECK(j["membership"]["inside_inner"] == false);
  CHECK(j["config"]["vector"] == "1/2,0");
}
