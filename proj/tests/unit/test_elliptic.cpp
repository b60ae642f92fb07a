// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "murearr/elliptic.hpp"
#include "oracles.hpp"

using namespace murearr;

namespace {

EllipticProblem disk_problem(int N, double c, double p = 2.0, double fval = 1.0, int n = 2) {
  const auto lat = make_lattice(GridSpec{n, N, 1.2}, RadialDensity(n, c));
  EllipticProblem prob;
  prob.shape = ball({0, 0, 0}, 1.0);
  prob.domain = rasterize(lat, *prob.shape);
  prob.p = p;
  prob.f = sample(lat, [fval](const Point&) { return fval; });
  return prob;
}

double radius(const Lattice& lat, std::size_t i) {
  const auto x = lat.position(i);
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

// max |u - ref| over the domain, relative to max ref
double rel_linf(const EllipticProblem& prob, const GridFunction& u, const std::function<double(double)>& ref) {
  const Lattice& lat = *u.lattice;
  double err = 0.0, top = 0.0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (prob.domain.occ[i] < 0.5) continue;
    const double r = ref(radius(lat, i));
    err = std::max(err, std::abs(u.values[i] - r));
    top = std::max(top, r);
  }
  return err / top;
}

}  // namespace

TEST_SUITE("elliptic") {
  TEST_CASE("flat torsion on the disk") {
    const auto prob = disk_problem(128, 0.0);
    const auto sol = solve_weighted_plaplace(prob);
    CHECK(rel_linf(prob, sol.u, [](double r) { return (1.0 - r * r) / 4.0; }) < 0.01);
  }

  TEST_CASE("mesh convergence") {
    double prev = 1.0;
    for (int N : {32, 64, 128}) {
      const auto prob = disk_problem(N, 1.0);
      const double err = rel_linf(prob, solve_weighted_plaplace(prob).u,
                                  [](double r) { return oracle::torsion_disk(1.0, r); });
      INFO("N = ", N, " err = ", err);
      CHECK(err < prev / 1.5);
      prev = err;
    }
  }

  TEST_CASE("weighted torsion against the radial ODE") {
    const auto prob = disk_problem(256, 1.0);
    const auto sol = solve_weighted_plaplace(prob);
    CHECK(rel_linf(prob, sol.u, [](double r) { return oracle::torsion_disk(1.0, r); }) < 0.01);
  }

  TEST_CASE("radial bound reproduces the radial solution on the disk") {
    for (double c : {0.0, 1.0}) {
      const auto prob = disk_problem(128, c);
      const auto v = radial_bound_v(prob);
      const RadialDensity d(2, c);
      for (double r : {0.0, 0.3, 0.6, 0.9}) {
        const double ref = c == 0.0 ? (1.0 - r * r) / 4.0 : oracle::torsion_disk(c, r);
        // the raster disk differs from the unit disk by O(Δ) in mass
        CHECK(std::abs(v(d.H(r)) - ref) < 0.01 * 0.25);
      }
    }
  }

  TEST_CASE("zero source gives zero solution") {
    const auto prob = disk_problem(64, 1.0, 2.0, 0.0);
    const auto sol = solve_weighted_plaplace(prob);
    CHECK(sol.u.max_value() == 0.0);
    auto prob3 = disk_problem(48, 1.0, 1.5, 0.0);
    CHECK(solve_weighted_plaplace(prob3).u.max_value() == 0.0);
  }

  TEST_CASE("homogeneity in the source") {
    const auto a = solve_weighted_plaplace(disk_problem(64, 1.0, 2.0, 1.0));
    const auto b = solve_weighted_plaplace(disk_problem(64, 1.0, 2.0, 3.0));
    CHECK(b.u.max_value() == doctest::Approx(3.0 * a.u.max_value()).epsilon(1e-7));
    // u scales by t^{1/(p-1)}
    const auto c = solve_weighted_plaplace(disk_problem(48, 1.0, 1.5, 1.0));
    const auto d = solve_weighted_plaplace(disk_problem(48, 1.0, 1.5, 2.0));
    CHECK(d.u.max_value() == doctest::Approx(4.0 * c.u.max_value()).epsilon(1e-4));
  }

  TEST_CASE("comparison holds on a square") {
    const auto lat = make_lattice(GridSpec{2, 128, 1.2}, RadialDensity(2, 1.0));
    EllipticProblem prob;
    prob.shape = box({-0.8, -0.8, -0.8}, {0.8, 0.8, 0.8});
    prob.domain = rasterize(lat, *prob.shape);
    prob.f = sample(lat, [](const Point&) { return 1.0; });
    const auto rep = compare(prob, {1.0, 1.5});
    CHECK(rep.passed);
    for (const auto& g : rep.metadata["gradient"]) CHECK(g["ratio"].get<double>() <= 1.02);
  }

  TEST_CASE("parameter errors") {
    auto prob = disk_problem(32, 1.0);
    CHECK_THROWS_AS(compare(prob, {2.0}), ParameterError);
    CHECK_THROWS_AS(compare(prob, {0.5}), ParameterError);
    prob.p = 1.0;
    CHECK_THROWS_AS(solve_weighted_plaplace(prob), DomainError);
    prob.p = 5.0;
    CHECK_THROWS_AS(solve_weighted_plaplace(prob), ParameterError);
    prob.p = 2.0;
    prob.f.values[prob.f.values.size() / 2 + 16] = -1.0;
    CHECK_THROWS_AS(radial_bound_v(prob), PreconditionError);
  }

  TEST_CASE("iteration cap raises ConvergenceError") {
    auto prob = disk_problem(64, 1.0);
    prob.solver.max_iter = 3;
    CHECK_THROWS_AS(solve_weighted_plaplace(prob), ConvergenceError);
  }
}
