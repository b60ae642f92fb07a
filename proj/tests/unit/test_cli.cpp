// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "murearr/cli.hpp"
#include "murearr/report.hpp"

using namespace murearr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("murearr_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == kExitPass);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    const auto r = run({"verify", "nope"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("unknown suite") != std::string::npos);
    CHECK(run({"verify", "anchors", "--N", "abc"}).code == kExitUsage);
  }

  TEST_CASE("profile CSV") {
    auto r = run({"profile", "--c", "1", "--n", "2", "--m-max", "10", "--points", "2"});
    REQUIRE(r.code == kExitPass);
    CHECK(r.out.rfind("m,radius,I\n0,0,0\n", 0) == 0);
    r = run({"profile", "--n", "1", "--c", "0", "--points", "1", "--m-max", "4"});
    CHECK(r.out == "m,J,I1\n0,1,2\n4,1,2\n");
  }

  TEST_CASE("verify writes JSON and report summarizes it") {
    const auto dir = scratch("verify");
    auto r = run({"verify", "anchors", "--out", dir.string()});
    REQUIRE(r.code == kExitPass);
    const auto j = Json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(fs::exists(dir / "verify_anchors.json"));
    r = run({"report", (dir / "verify_anchors.json").string()});
    CHECK(r.code == kExitPass);
    CHECK(r.out.rfind("source,suite,check,value,relation,bound,passed\n", 0) == 0);
    CHECK(r.out.find("anchors,H(1)/rel_error") != std::string::npos);
    fs::remove_all(dir);
  }

  TEST_CASE("config file with flag overrides") {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    {
      std::ofstream(dir / "ok.json") << R"({"cases": 50, "c": 0.5})";
      std::ofstream(dir / "bad.json") << R"({"N": "many"})";
      std::ofstream(dir / "unknown.json") << R"({"grid": 3})";
    }
    auto r = run({"verify", "iso1d", "--config", (dir / "ok.json").string(), "--c", "1"});
    REQUIRE(r.code == kExitPass);
    const auto j = Json::parse(r.out);
    CHECK(j["config"]["cases"] == 50);
    CHECK(j["config"]["c"] == 1.0);
    r = run({"verify", "iso1d", "--config", (dir / "bad.json").string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("config.N") != std::string::npos);
    r = run({"verify", "iso1d", "--config", (dir / "unknown.json").string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("config.grid") != std::string::npos);
    fs::remove_all(dir);
  }

  TEST_CASE("solve and symmetrize") {
    const auto dir = scratch("solve");
    auto r = run({"solve", "--N", "64", "--out", dir.string()});
    REQUIRE(r.code == kExitPass);
    CHECK(fs::exists(dir / "solution.mugrid"));
    CHECK(fs::exists(dir / "solve_report.json"));
    r = run({"symmetrize", "--mode", "schwarz", "--in", (dir / "solution.mugrid").string(), "--out",
             (dir / "sym.mugrid").string()});
    CHECK(r.code == kExitPass);
    CHECK(fs::exists(dir / "sym.mugrid"));
    CHECK(run({"solve", "--N", "32", "--p", "0.5"}).code == kExitUsage);
    CHECK(run({"symmetrize", "--in", (dir / "missing.mugrid").string()}).code == kExitUsage);
    fs::remove_all(dir);
  }

  TEST_CASE("iteration cap is a numerical failure") {
    const auto dir = scratch("cap");
    fs::create_directories(dir);
    std::ofstream(dir / "cfg.json") << R"({"N": 64, "solver": {"max_iter": 2}})";
    const auto r = run({"solve", "--config", (dir / "cfg.json").string()});
    CHECK(r.code == kExitNumerical);
    fs::remove_all(dir);
  }
}
