// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "murearr/rearrange1d.hpp"
#include "oracles.hpp"

using namespace murearr;

TEST_SUITE("rearrange1d") {
  TEST_CASE("intervals merge and sort") {
    const IntervalSet s({{1.0, 2.0}, {-1.0, 0.0}, {1.5, 3.0}, {0.0, 0.5}});
    REQUIRE(s.size() == 2);
    CHECK(s.intervals()[0] == IntervalSet::Interval{-1.0, 0.5});
    CHECK(s.intervals()[1] == IntervalSet::Interval{1.0, 3.0});
    CHECK_FALSE(IntervalSet::centered(1.5).subset_of(s));
    CHECK(IntervalSet({{-0.5, 0.2}}).subset_of(s));
  }

  TEST_CASE("measure and perimeter") {
    const auto d = Density1D::gaussian(1.0);
    const IntervalSet s({{0.2, 0.9}, {1.2, 1.5}});
    const double m = oracle::psi_primitive(1.0, 0.9) - oracle::psi_primitive(1.0, 0.2) +
                     oracle::psi_primitive(1.0, 1.5) - oracle::psi_primitive(1.0, 1.2);
    CHECK(measure_1d(d, s) == doctest::Approx(m).epsilon(1e-9));
    double p = 0.0;
    for (double t : {0.2, 0.9, 1.2, 1.5}) p += std::exp(t * t);
    CHECK(perimeter_1d(d, s) == doctest::Approx(p).epsilon(1e-12));
  }

  TEST_CASE("symmetrization: random sets") {
    Rng rng(11);
    for (double c : {0.0, 0.5, 1.0}) {
      const auto d = Density1D::gaussian(c);
      for (int k = 0; k < 300; ++k) {
        const auto s = random_interval_set(rng);
        const auto sym = symmetrize_1d(d, s);
        REQUIRE(sym.size() == 1);
        CHECK(sym.intervals()[0].first == doctest::Approx(-sym.intervals()[0].second));
        const double m = measure_1d(d, s);
        CHECK(measure_1d(d, sym) == doctest::Approx(m).epsilon(1e-11));
        const double scale = std::max(1.0, perimeter_1d(d, s));
        CHECK(perimeter_1d(d, s) >= d.profile(m) - 1e-9 * scale);
        CHECK(perimeter_1d(d, sym) == doctest::Approx(d.profile(m)).epsilon(1e-9));
        const auto rep = verify_iso_1d(d, s);
        CHECK(rep.passed);
      }
    }
  }

  TEST_CASE("off-center intervals have a visible deficit for c = 1") {
    const auto d = Density1D::gaussian(1.0);
    const IntervalSet s({{-0.5, 0.7}});
    const double deficit = perimeter_1d(d, s) - d.profile(measure_1d(d, s));
    CHECK(deficit > 1e-3);
    const IntervalSet shifted({{-0.6 + 1e-5, 0.6 + 1e-5}});
    CHECK(perimeter_1d(d, shifted) - d.profile(measure_1d(d, shifted)) < 1e-6);
  }

  TEST_CASE("Minkowski content tends to the perimeter") {
    const auto d = Density1D::gaussian(0.5);
    const IntervalSet s({{-1.0, -0.2}, {0.4, 1.1}});
    const double P = perimeter_1d(d, s);
    CHECK(std::abs(minkowski_content_1d(d, s, 1e-6) - P) / P < 1e-5);
    // dilation merging the gap halves the boundary count
    CHECK(s.dilate(0.35).size() == 1);
  }

  TEST_CASE("Hausdorff distance") {
    CHECK(hausdorff_distance(IntervalSet({{0.0, 1.0}}), IntervalSet({{0.0, 1.0}})) == 0.0);
    CHECK(hausdorff_distance(IntervalSet({{0.0, 1.0}}), IntervalSet({{0.0, 1.5}})) == doctest::Approx(0.5));
  }
}
