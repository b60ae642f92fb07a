// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "murearr/io.hpp"
#include "murearr/shapes.hpp"

using namespace murearr;

TEST_SUITE("io") {
  TEST_CASE("doubles round-trip through text") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-310, 0.0}) {
      CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
  }

  TEST_CASE("grid function round-trip, text and CSV") {
    const auto lat = make_lattice(GridSpec{2, 16, 1.5}, RadialDensity(2, 0.5));
    Rng rng(2);
    const auto u = sample_bumps(lat, random_bumps(rng, 2, 1.5));
    for (auto fmt : {GridFileFormat::kText, GridFileFormat::kCsv}) {
      std::stringstream ss;
      write_grid_function(ss, u, fmt);
      const auto back = read_grid_function(ss);
      CHECK(back.values == u.values);
      CHECK(back.lattice->spec().to_json() == lat->spec().to_json());
      CHECK(back.lattice->density_json() == lat->density_json());
    }
  }

  TEST_CASE("grid set round-trip and kind detection") {
    const auto lat = make_lattice(GridSpec{2, 16, 1.5}, RadialDensity(2, 1.0));
    const auto s = rasterize(lat, ball({0, 0, 0}, 0.8));
    std::stringstream ss;
    write_grid_set(ss, s);
    const auto f = read_grid_file(ss);
    CHECK_FALSE(f.is_function);
    CHECK(f.values == s.occ);
  }

  TEST_CASE("malformed files") {
    std::stringstream bad("MUGRID v2 2 16 1.5 {}\n");
    CHECK_THROWS_AS(read_grid_file(bad), Error);
    std::stringstream short_rows("MUGRID v1 2 4 1 {\"kind\":\"gauss\",\"c\":0,\"n\":2}\n0 0 0 0\n");
    CHECK_THROWS_AS(read_grid_file(short_rows), Error);
  }

  TEST_CASE("density specs") {
    const Json g = {{"kind", "gauss"}, {"c", 1.0}, {"n", 2}};
    CHECK(weight_to_json(weight_from_json(g)) == g);
    const Json s = Json::parse(R"({"kind":"singular-radial","n":2,"a":{"kind":"affine","coeffs":[0,1]}})");
    const auto w = weight_from_json(s);
    REQUIRE(std::holds_alternative<SingularRadialDensity>(w));
    CHECK(std::get<SingularRadialDensity>(w).sphere_weight(0.0) == doctest::Approx(2.0 * M_PI));
    CHECK_THROWS_AS(weight_from_json(Json{{"kind", "cauchy"}}), ParameterError);
    const auto d = density1d_from_json(Json{{"kind", "gauss"}, {"c", 0.5}});
    CHECK(d.c() == 0.5);
  }

  TEST_CASE("reports and interval sets") {
    auto r = ComparisonReport::make("x", 2.0, 1.0, 0.1);
    CHECK(r.passed);
    CHECK(r.deficit == 1.0);
    r.metadata["seed"] = 7;
    const auto back = ComparisonReport::from_json(r.to_json());
    CHECK(back.to_json() == r.to_json());
    CHECK_FALSE(ComparisonReport::make("y", 1.0, 1.2, 0.1).passed);
    const IntervalSet s({{-1.0, 0.5}, {1.0, 2.0}});
    CHECK(interval_set_from_json(interval_set_to_json(s)).intervals() == s.intervals());
  }
}
