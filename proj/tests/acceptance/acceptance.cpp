// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner: one PASS/FAIL line per criterion. Thresholds are pinned
// here, independently of the bounds the suites report.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "murearr/parallel.hpp"
#include "murearr/suites.hpp"

using namespace murearr;

namespace {

struct Pin {
  std::string pattern;  // regex over check ids
  bool at_most;         // value <= bound, else value >= bound
  double bound;
  std::size_t min_matches = 1;
};

struct Criterion {
  int number;
  std::string title;
  std::string suite;
  double time_limit_s;
  std::vector<Pin> pins;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "1-D isoperimetric inequality, 10000 interval sets", "iso1d", 10.0,
       {{R"(c=(0|0\.5|1)/min_scaled_deficit)", false, -1e-9, 3},
        {R"(c=1/near_equality_not_centered)", true, 0.0}}},
      {2, "profile anchors H(1), I(pi(e-1))", "anchors", 1.0,
       {{R"(H\(1\)/rel_error)", true, 1e-8}, {R"(I\(pi\(e-1\)\)/rel_error)", true, 1e-8}}},
      {3, "n-D isoperimetric inequality, disks and 200 blobs", "isond", 120.0,
       {{"disk_max_rel_error", true, 0.01}, {"blob_min_perimeter_over_profile", false, 0.98}}},
      {4, "Steiner monotonicity and polyhedral deficit bound", "steiner", 120.0,
       {{R"(c=\d+/min_perimeter_ratio)", false, 0.98, 2},
        {R"(c=\d+/polyhedral_min_deficit_over_bound)", false, 0.95, 2}}},
      {5, "rearrangement identities on 100 random pairs", "properties", 60.0,
       {{R"(.*/equimeasurability_max_cell_masses)", true, 3.0, 4},
        {R"(.*/cavalieri_max_rel_error)", true, 1e-12, 4},
        {R"(.*/(hardy_littlewood|nonexpansivity|supnorm_contraction|correlation_product|correlation_min)_min_rel_deficit)",
         false, -0.01, 20}}},
      {6, "Dirichlet energy does not increase, p in {1,2,3}", "polya", 120.0,
       {{R"(c=\d+/p=\d/(steiner|schwarz)/min_rel_deficit)", false, -0.02, 12},
        {R"(c=1/recentered/(steiner|schwarz)/rel_deficit)", false, 1e-3, 2}}},
      {7, "comparison with the radial problem", "comparison", 180.0,
       {{R"(control/solver_rel_linf_error)", true, 0.01},
        {R"(control/symmetrized_vs_v_rel_linf)", true, 0.01},
        {R"((square|lshape)/f=(one|bump)/min_v_minus_usym_over_max_v)", false, -0.02, 4},
        {R"((square|lshape)/f=(one|bump)/max_gradient_ratio)", true, 1.02, 4},
        {R"(p1\.5/.*/min_v_minus_usym_over_max_v)", false, -0.03},
        {R"(p1\.5/.*/max_gradient_ratio)", true, 1.03}}},
      {8, "best constant 2cn and oscillator form", "rayleigh", 60.0,
       {{"gaussian_rel_gap", true, 0.02},
        {"bumps_min_quotient", false, 3.92},
        {"oscillator_min_over_positive_part", false, -0.005},
        {"ground_state_abs_form_over_gradient", true, 0.005}}},
      {9, "singular radial measure, balls and stars", "singular", 30.0,
       {{"ball_rel_error", true, 0.01}, {"stars_min_ratio", false, 0.98}}},
  };
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Returns the failure descriptions; empty when every pin holds.
std::vector<std::string> check_pins(const Criterion& c, const Json& result) {
  std::vector<std::string> bad;
  if (!result.value("passed", false)) bad.push_back("suite reported failure");
  for (const auto& pin : c.pins) {
    const std::regex re(pin.pattern);
    std::size_t matches = 0;
    for (const auto& chk : result.at("checks")) {
      const std::string id = chk.at("id").get<std::string>();
      if (!std::regex_match(id, re)) continue;
      ++matches;
      const double v = check_value(result, id);
      const bool ok = pin.at_most ? v <= pin.bound : v >= pin.bound;
      if (!ok) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s = %.6g, need %s %.6g", id.c_str(), v, pin.at_most ? "<=" : ">=",
                      pin.bound);
        bad.push_back(buf);
      }
    }
    if (matches < pin.min_matches) bad.push_back("missing checks for /" + pin.pattern + "/");
  }
  return bad;
}

}  // namespace

int main() {
  const SuiteConfig cfg;  // defaults, seed 7
  int failed = 0;

  // run A: per-suite timing under a multi-threaded cap
  set_thread_cap(4);
  std::map<std::string, Json> run_a;
  double total_a = 0.0;
  for (const auto& name : suite_names()) {
    const auto t0 = std::chrono::steady_clock::now();
    run_a[name] = run_suite(name, cfg);
    const double dt = seconds_since(t0);
    run_a[name]["__seconds"] = dt;
    total_a += dt;
  }

  for (const auto& c : criteria()) {
    Json r = run_a.at(c.suite);
    const double dt = r["__seconds"].get<double>();
    r.erase("__seconds");
    auto bad = check_pins(c, r);
    if (dt >= c.time_limit_s) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "runtime %.2f s over the %.0f s limit", dt, c.time_limit_s);
      bad.push_back(buf);
    }
    std::printf("%s criterion %d: %s [%s, %.2f s]\n", bad.empty() ? "PASS" : "FAIL", c.number, c.title.c_str(),
                c.suite.c_str(), dt);
    for (const auto& b : bad) std::printf("    %s\n", b.c_str());
    failed += !bad.empty();
  }

  // run B: the full suite single-threaded must reproduce every report byte for byte
  set_thread_cap(1);
  const auto t0 = std::chrono::steady_clock::now();
  const Json full = run_all_suites(cfg);
  const double total_b = seconds_since(t0);
  std::vector<std::string> bad;
  for (const auto& s : full.at("suites")) {
    const std::string name = s.at("suite").get<std::string>();
    Json a = run_a.at(name);
    a.erase("__seconds");
    if (a.dump() != s.dump()) bad.push_back("report differs between thread caps: " + name);
  }
  Json iso_a = run_a.at("iso1d");
  iso_a.erase("__seconds");
  if (run_suite("iso1d", cfg).dump() != iso_a.dump()) bad.push_back("repeated run differs: iso1d");
  if (total_b >= 600.0) bad.push_back("full suite wall time over 10 min");
  std::printf("%s criterion 10: byte-identical reports across thread caps 4 and 1 [full, %.2f s / %.2f s]\n",
              bad.empty() ? "PASS" : "FAIL", total_a, total_b);
  for (const auto& b : bad) std::printf("    %s\n", b.c_str());
  failed += !bad.empty();

  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
