// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/report.hpp"

namespace murearr {

ComparisonReport ComparisonReport::make(std::string op, double lhs, double rhs, double tolerance) {
  ComparisonReport r;
  r.operation = std::move(op);
  r.lhs = lhs;
  r.rhs = rhs;
  r.deficit = lhs - rhs;
  r.tolerance = tolerance;
  r.passed = r.deficit >= -tolerance;
  return r;
}

Json ComparisonReport::to_json() const {
  Json j;
  j["operation"] = operation;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["deficit"] = deficit;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  j["metadata"] = metadata;
  return j;
}

ComparisonReport ComparisonReport::from_json(const Json& j) {
  ComparisonReport r;
  r.operation = j.at("operation").get<std::string>();
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.deficit = j.at("deficit").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.passed = j.at("passed").get<bool>();
  if (j.contains("metadata")) r.metadata = j.at("metadata");
  return r;
}

}  // namespace murearr
