// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "murearr/gridsets.hpp"
#include "murearr/shapes.hpp"
#include "oracles.hpp"

using namespace murearr;
using std::numbers::pi;

namespace {

LatticePtr gauss_lattice(int N, double L, double c, int n = 2) {
  return make_lattice(GridSpec{n, N, L}, RadialDensity(n, c));
}

// reference μ of a cell-center rasterization, summed directly
double raster_mass(const LatticePtr& lat, const GridSet& s, double c) {
  double m = 0.0;
  for (std::size_t i = 0; i < lat->size(); ++i) {
    const auto x = lat->position(i);
    m += s.occ[i] * std::exp(c * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  }
  return m * std::pow(lat->delta(), lat->n());
}

}  // namespace

TEST_SUITE("gridsets") {
  TEST_CASE("disk perimeter matches 2πr e^{cr²}") {
    const auto lat = gauss_lattice(256, 2.5, 1.0);
    for (double r : {0.5, 1.0, 1.4}) {
      const auto s = rasterize(lat, ball({0, 0, 0}, r));
      const double ref = 2.0 * pi * r * std::exp(r * r);
      CHECK(std::abs(perimeter_boundary_integral(s) - ref) / ref < 0.01);
      CHECK(grid_measure(s) == doctest::Approx(raster_mass(lat, s, 1.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("Minkowski quotient cross-check") {
    const auto lat = gauss_lattice(256, 2.5, 1.0);
    const auto s = rasterize(lat, ball({0, 0, 0}, 1.0));
    const double r = 4.0 * lat->delta();
    // the quotient at finite r, not its limit
    const double ref = (oracle::radial_mass(2, 1.0, 1.0 + r) - oracle::radial_mass(2, 1.0, 1.0)) / r;
    CHECK(std::abs(perimeter_minkowski(s, r) - ref) / ref < 0.02);
    CHECK_THROWS_AS(perimeter_minkowski(s, 0.5 * lat->delta()), ParameterError);
  }

  TEST_CASE("parallel set of a disk is the larger disk") {
    const auto lat = gauss_lattice(256, 2.5, 1.0);
    const auto s = rasterize(lat, ball({0, 0, 0}, 0.8));
    const auto big = parallel_set(s, 0.3);
    const double ref = oracle::radial_mass(2, 1.0, 1.1);
    CHECK(std::abs(grid_measure(big) - ref) / ref < 0.01);
    CHECK_THROWS_AS(parallel_set(s, 2.0), ParameterError);
  }

  TEST_CASE("Steiner: mass per line, symmetry, no perimeter gain") {
    const auto lat = gauss_lattice(128, 2.5, 1.0);
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
      const auto s = rasterize(lat, random_blob(rng, 2, 2.5));
      for (int axis : {0, 1}) {
        const auto st = steiner_symmetrize_set(s, axis);
        CHECK(grid_measure(st) == doctest::Approx(grid_measure(s)).epsilon(1e-12));
        const int N = lat->N();
        for (int j = 0; j < N; ++j) {
          for (int i = 0; i < N; ++i) {
            const auto a = axis == 0 ? lat->index(i, j) : lat->index(j, i);
            const auto b = axis == 0 ? lat->index(N - 1 - i, j) : lat->index(j, N - 1 - i);
            CHECK(st.occ[a] == doctest::Approx(st.occ[b]).epsilon(1e-12));
          }
        }
        CHECK(perimeter_boundary_integral(threshold(st)) <= perimeter_boundary_integral(s) * 1.02);
      }
    }
  }

  TEST_CASE("Schwarz ball keeps the measure and is centered") {
    const auto lat = gauss_lattice(128, 2.5, 1.0);
    const auto s = rasterize(lat, ellipse({0.4, -0.2, 0}, 0.9, 0.5, 0.3));
    const auto b = schwarz_symmetrize_set(s);
    CHECK(grid_measure(b) == doctest::Approx(grid_measure(s)).epsilon(1e-12));
    const auto ref = rasterize(lat, ball({0, 0, 0}, RadialDensity(2, 1.0).H_inverse(grid_measure(s))));
    CHECK(symmetric_difference(b, ref) / grid_measure(s) < 0.02);
  }

  TEST_CASE("isoperimetric check on random blobs") {
    const auto lat = gauss_lattice(256, 2.5, 1.0);
    Rng rng(5);
    for (int k = 0; k < 5; ++k) {
      const auto rep = verify_iso_nd(rasterize(lat, random_blob(rng, 2, 2.5)));
      CHECK(rep.passed);
      CHECK(rep.lhs >= 0.98 * rep.rhs);
    }
  }

  TEST_CASE("three-dimensional ball via Minkowski quotient") {
    // first-order convergence to the quotient of the ball with the raster's volume
    double prev = 1.0;
    for (int N : {32, 64}) {
      const auto lat = gauss_lattice(N, 2.0, 0.0, 3);
      const auto set = rasterize(lat, ball({0, 0, 0}, 1.0));
      const auto rep = verify_iso_nd(set, 0.05);
      CHECK(rep.passed);
      const double R = std::cbrt(grid_measure(set) * 3.0 / (4.0 * pi));
      const double r = 4.0 * lat->delta();
      const double ref = 4.0 * pi / 3.0 * (std::pow(R + r, 3) - R * R * R) / r;
      const double err = std::abs(rep.lhs - ref) / ref;
      INFO("N = ", N, " err = ", err);
      CHECK(err < 0.6 * prev);
      prev = err;
    }
    CHECK(prev < 0.05);
  }

  TEST_CASE("polyhedral deficit bound") {
    const auto lat = gauss_lattice(128, 2.0, 1.0);
    Rng rng(9);
    for (int k = 0; k < 5; ++k) {
      const auto rep = steiner_deficit_bound(rasterize(lat, random_rectangles(rng, 2.0, lat->delta())));
      CHECK(rep.lhs >= 0.95 * rep.rhs);
    }
  }

  TEST_CASE("singular density: ball equality") {
    const SingularRadialDensity d(2, ConvexProfile::affine(0.0, 1.0));
    const auto lat = make_lattice(GridSpec{2, 512, 2.5}, d);
    const auto rep = singular_minkowski_check(d, rasterize(lat, ball({0, 0, 0}, 1.0)));
    CHECK(std::abs(rep.deficit) / rep.rhs < 0.01);
  }

  TEST_CASE("iterated Steiner approaches the ball") {
    const auto lat = gauss_lattice(128, 2.5, 1.0);
    const auto s = rasterize(lat, ellipse({0.3, 0.1, 0}, 1.1, 0.45, 0.5));
    const auto res = iterated_steiner(s, 6, pi / 5);
    REQUIRE(res.distance_to_ball.size() == 6);
    CHECK(res.distance_to_ball.back() < res.distance_to_ball.front() + 1e-12);
    CHECK(res.distance_to_ball.back() < 0.05);
  }
}
