// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "murearr/density.hpp"
#include "oracles.hpp"

using namespace murearr;
using std::numbers::pi;

TEST_SUITE("density") {
  TEST_CASE("flat density is Lebesgue") {
    const auto d = Density1D::gaussian(0.0);
    CHECK(d.primitive(1.7) == doctest::Approx(1.7).epsilon(1e-14));
    CHECK(d.primitive_inverse(0.3) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(d.iso_j(5.0) == doctest::Approx(1.0));
    CHECK(d.profile(3.0) == doctest::Approx(2.0));
  }

  TEST_CASE("gaussian primitive against Simpson") {
    for (double c : {0.5, 1.0, 2.0}) {
      const auto d = Density1D::gaussian(c);
      for (double x : {0.05, 0.4, 1.0, 1.9, 2.6}) {
        const double ref = oracle::psi_primitive(c, x);
        CHECK(std::abs(d.primitive(x) - ref) / ref < 1e-9);
        CHECK(d.primitive(-x) == doctest::Approx(-d.primitive(x)).epsilon(1e-15));
        CHECK(d.primitive_inverse(ref) == doctest::Approx(x).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("J is convex for log-convex gaussians") {
    for (double c : {0.0, 0.5, 1.0}) {
      const auto d = Density1D::gaussian(c);
      const double h = 0.05;
      for (double y = h; y < 20.0; y += 0.37) {
        const double second = d.iso_j(y + h) - 2.0 * d.iso_j(y) + d.iso_j(y - h);
        CHECK(second >= -1e-9 * d.iso_j(y));
      }
      // I₁(m) = 2 J(m / 2) = 2 ψ(Ψ⁻¹(m / 2))
      const double m = 3.3;
      const double x = oracle::bisect([&](double t) { return oracle::psi_primitive(c, t) - m / 2; }, 0.0, 5.0);
      CHECK(d.profile(m) == doctest::Approx(2.0 * std::exp(c * x * x)).epsilon(1e-8));
    }
  }

  TEST_CASE("tabulated density, log-linear interpolation") {
    // log ψ = t on [0, 2], flat tail: Ψ(x) = e^x - 1 for x <= 2
    const auto d = Density1D::tabulated({0.0, 1.0, 2.0}, {1.0, std::exp(1.0), std::exp(2.0)}, Tail::kFlat);
    CHECK(d.primitive(1.5) == doctest::Approx(std::exp(1.5) - 1.0).epsilon(1e-10));
    CHECK(d.primitive(3.0) == doctest::Approx(std::exp(2.0) - 1.0 + std::exp(2.0)).epsilon(1e-10));
    CHECK(d.psi(-0.5) == doctest::Approx(std::exp(0.5)));
  }

  TEST_CASE("log-convexity test") {
    CHECK(log_convexity_check(Density1D::gaussian(1.0), SampleGrid{}).convex);
    // bump in log ψ at t = 1: concave there
    const auto bad = Density1D::tabulated({0.0, 0.5, 1.0, 1.5, 2.0}, {1.0, 1.0, 3.0, 1.0, 1.0});
    const auto rep = log_convexity_check(bad, SampleGrid{});
    CHECK_FALSE(rep.convex);
    CHECK(rep.worst_violation > 0.1);
  }

  TEST_CASE("radial mass and profile") {
    // n = 2 closed form: H(r) = π (e^{c r²} - 1) / c
    const RadialDensity d2(2, 1.0);
    CHECK(d2.H(1.0) == doctest::Approx(pi * (std::exp(1.0) - 1.0)).epsilon(1e-12));
    CHECK(d2.profile(pi * (std::exp(1.0) - 1.0)) == doctest::Approx(2.0 * pi * std::exp(1.0)).epsilon(1e-10));
    for (double c : {0.0, 0.5, 1.0}) {
      for (int n : {2, 3}) {
        const RadialDensity d(n, c);
        for (double r : {0.01, 0.3, 1.0, 1.8}) {
          const double ref = oracle::radial_mass(n, c, r);
          CHECK(std::abs(d.H(r) - ref) / ref < 1e-9);
          CHECK(d.H_inverse(ref) == doctest::Approx(r).epsilon(1e-9));
          CHECK(d.profile(ref) == doctest::Approx(oracle::sphere_area(n) * std::exp(c * r * r) * std::pow(r, n - 1))
                                      .epsilon(1e-8));
        }
      }
    }
    CHECK(RadialDensity(3, 0.0).H(1.0) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-12));
  }

  TEST_CASE("singular radial density with a(t) = t") {
    const SingularRadialDensity d(2, ConvexProfile::affine(0.0, 1.0));
    CHECK(d.ball_mass(1.2) == doctest::Approx(2.0 * pi * (std::exp(1.2) - 1.0)).epsilon(1e-9));
    CHECK(d.sphere_weight(1.2) == doctest::Approx(2.0 * pi * std::exp(1.2)));
    CHECK(d.ball_radius(d.ball_mass(0.8)) == doctest::Approx(0.8).epsilon(1e-9));
  }

  TEST_CASE("argument errors") {
    const RadialDensity d(2, 1.0);
    CHECK_THROWS_AS(d.H_inverse(-1.0), DomainError);
    CHECK_THROWS_AS(Density1D::gaussian(-1.0), Error);
    CHECK_THROWS_AS(Density1D::tabulated({0.5, 1.0}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(RadialDensity(0, 1.0), Error);
  }
}
