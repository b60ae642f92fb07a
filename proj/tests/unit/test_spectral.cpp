// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "murearr/shapes.hpp"
#include "murearr/spectral.hpp"
#include "oracles.hpp"

using namespace murearr;
using std::numbers::pi;

namespace {

LatticePtr lat(int N, double L, double c, int n = 2) { return make_lattice(GridSpec{n, N, L}, RadialDensity(n, c)); }

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("Rayleigh quotient of e^{-α|x|²}") {
    // with μ = e^{c|x|²}: Q = 4α² ∫r³e^{(c-2α)r²} / ∫r e^{(c-2α)r²}
    const double c = 1.0;
    for (double alpha : {1.0, 1.5}) {
      const double k = 2.0 * alpha - c;
      const double num = oracle::simpson([k](double r) { return r * r * r * std::exp(-k * r * r); }, 0.0, 8.0);
      const double den = oracle::simpson([k](double r) { return r * std::exp(-k * r * r); }, 0.0, 8.0);
      const double ref = 4.0 * alpha * alpha * num / den;
      const double q = rayleigh_quotient(truncated_gaussian(lat(512, 4.0, c), alpha));
      CHECK(std::abs(q - ref) / ref < 0.02);
    }
  }

  TEST_CASE("bumps stay above the ground level") {
    const auto l = lat(256, 4.0, 1.0);
    for (const auto& f : bump_corpus(l, 3, 15)) {
      INFO(f.id);
      CHECK(rayleigh_quotient(f.u) >= 4.0 * 0.98);
    }
  }

  TEST_CASE("report fields") {
    const auto r = rayleigh_report(truncated_gaussian(lat(256, 4.0, 1.0), 1.0), "gaussian");
    CHECK(r.target == doctest::Approx(4.0));
    CHECK(r.relative_gap == doctest::Approx((r.quotient - 4.0) / 4.0));
    CHECK(r.to_json()["function_id"] == "gaussian");
  }

  TEST_CASE("oscillator form vanishes on the ground state") {
    // v = e^{-c|x|²/2}: ∫|∇v|² = (cn/2) (π/c)^{n/2}, potential equal, mass term cn (π/c)^{n/2}
    const double c = 1.0;
    const auto l = lat(512, 4.0, 0.0);
    const auto v = sample(l, [c](const Point& x) { return std::exp(-0.5 * c * (x[0] * x[0] + x[1] * x[1])); });
    const auto form = oscillator_form(v, c, 2);
    CHECK(form.gradient == doctest::Approx(pi).epsilon(0.005));
    CHECK(form.potential == doctest::Approx(pi).epsilon(0.005));
    CHECK(form.mass == doctest::Approx(2.0 * pi).epsilon(0.005));
    CHECK(std::abs(form.value()) / form.gradient < 0.005);
  }

  TEST_CASE("oscillator form is nonnegative on bumps") {
    const auto l = lat(256, 4.0, 0.0);
    for (const auto& f : bump_corpus(l, 5, 10)) {
      const auto form = oscillator_form(f.u, 1.0, 2);
      CHECK(form.value() >= -0.005 * form.positive_part());
    }
  }

  TEST_CASE("smooth cutoff") {
    CHECK(smooth_cutoff(0.5, 1.0, 2.0) == 1.0);
    CHECK(smooth_cutoff(2.5, 1.0, 2.0) == 0.0);
    CHECK(smooth_cutoff(1.5, 1.0, 2.0) == doctest::Approx(0.5));
  }

  TEST_CASE("Sobolev exponent range") {
    CHECK_NOTHROW(check_sobolev_range(2, 1.0, 2.0));
    CHECK_THROWS_AS(check_sobolev_range(2, 1.0, 2.5), ParameterError);
    CHECK_THROWS_AS(check_sobolev_range(2, 2.0, 1.0), ParameterError);
    CHECK_THROWS_AS(check_sobolev_range(2, 2.0, INFINITY), ParameterError);
    CHECK_NOTHROW(check_sobolev_range(2, 3.0, INFINITY));
    CHECK_THROWS_AS(check_sobolev_range(3, 0.5, 1.0), ParameterError);
    try {
      check_sobolev_range(3, 2.0, 7.0);
      FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
      CHECK(std::string(e.what()).find("[2, 6]") != std::string::npos);
    }
  }

  TEST_CASE("survey and CSV") {
    const auto corpus = bump_corpus(lat(128, 4.0, 1.0), 1, 5);
    const auto s = sobolev_ratio_survey(corpus, 2.0, 2.0);
    CHECK(s.rows.size() == corpus.size());
    CHECK(s.report.passed);
    std::ostringstream os;
    write_survey_csv(os, s.rows);
    CHECK(os.str().rfind("function_id,p,q,ratio\n", 0) == 0);
    CHECK_THROWS_AS(rayleigh_quotient(GridFunction(lat(32, 4.0, 1.0))), DomainError);
  }
}
