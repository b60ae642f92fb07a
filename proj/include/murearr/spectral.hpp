// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "murearr/grid.hpp"
#include "murearr/report.hpp"

namespace murearr {

/// ‖∇u‖²_{2,μ} / ‖u‖²_{2,μ} with the central-difference gradient.
double rayleigh_quotient(const GridFunction& u);

struct RayleighReport {
  double quotient = 0.0;
  std::string function_id;
  GridSpec grid;
  double c = 0.0;
  int n = 2;
  double target = 0.0;  ///< 2cn
  double relative_gap = 0.0;
  Json to_json() const;
};
RayleighReport rayleigh_report(const GridFunction& u, const std::string& id);

/// Pieces of ∫ |∇v|² + c²|x|² v² - cn v² dx (Lebesgue measure).
struct OscillatorForm {
  double gradient = 0.0;
  double potential = 0.0;
  double mass = 0.0;
  double value() const { return gradient + potential - mass; }
  double positive_part() const { return gradient + potential; }
};
OscillatorForm oscillator_form(const GridFunction& v, double c, int n);

/// C¹ cutoff: 1 for r <= r0, 0 for r >= r1, smoothstep between.
double smooth_cutoff(double r, double r0, double r1);
/// exp(-alpha |x|²) times the cutoff between 0.7L and 0.9L.
GridFunction truncated_gaussian(LatticePtr lat, double alpha);

struct NamedFunction {
  std::string id;
  GridFunction u;
};
/// "gaussian" (alpha = c, or 1 when c = 0) followed by `count` random bump sums.
std::vector<NamedFunction> bump_corpus(LatticePtr lat, std::uint64_t seed, int count);

/// q = +inf is allowed where admissible.
void check_sobolev_range(int n, double p, double q);

struct SurveyRow {
  std::string function_id;
  double p = 0.0;
  double q = 0.0;
  double ratio = 0.0;
};
struct SurveyResult {
  std::vector<SurveyRow> rows;
  double min_ratio = 0.0;
  std::string argmin;
  ComparisonReport report;
};

/// min over the corpus of ‖∇u‖_{p,μ} / ‖u‖_{q,μ}. For (2, 2) the report
/// asserts ratio² >= 2cn (1 - rel_tol); otherwise only min > 0.
SurveyResult sobolev_ratio_survey(const std::vector<NamedFunction>& corpus, double p, double q,
                                  double rel_tol = 0.02);
void write_survey_csv(std::ostream& os, const std::vector<SurveyRow>& rows);

}  // namespace murearr
