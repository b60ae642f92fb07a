// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "murearr/report.hpp"

namespace murearr {

/// Overrides for a verification suite; unset fields take the suite default.
struct SuiteConfig {
  std::uint64_t seed = 7;
  std::optional<int> cases;
  std::optional<double> c;
  std::optional<int> n;
  std::optional<int> N;
  std::optional<double> L;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> tol;
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs one suite. The result holds "suite", "config", "passed", a "checks"
/// array of {id, value, relation, bound, passed} and the failing reports.
Json run_suite(const std::string& name, const SuiteConfig& cfg);

/// Every suite in suite_names() order under one object.
Json run_all_suites(const SuiteConfig& cfg);

/// Looks up a check value by id in a suite result; throws if missing.
double check_value(const Json& suite, const std::string& id);

}  // namespace murearr
