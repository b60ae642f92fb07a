// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "json.hpp"

namespace murearr {

using Json = nlohmann::ordered_json;

/// Both sides of one verified inequality, `lhs - rhs >= -tolerance` unless the
/// producing operation documents otherwise.
struct ComparisonReport {
  std::string operation;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Density spec, grid spec, seed and operation-specific extras.
  Json metadata = Json::object();

  static ComparisonReport make(std::string op, double lhs, double rhs, double tolerance);

  Json to_json() const;
  static ComparisonReport from_json(const Json& j);
};

}  // namespace murearr
