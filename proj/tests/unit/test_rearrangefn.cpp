// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "murearr/rearrangefn.hpp"
#include "murearr/shapes.hpp"

using namespace murearr;

namespace {

LatticePtr lat2(int N = 96, double L = 2.5, double c = 1.0) {
  return make_lattice(GridSpec{2, N, L}, RadialDensity(2, c));
}

GridFunction random_fn(const LatticePtr& lat, Rng& rng) {
  return sample_bumps(lat, random_bumps(rng, lat->n(), lat->spec().L));
}

double direct_integral(const GridFunction& u, double power) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) s += std::pow(u.values[i], power) * u.lattice->cell_mass(i);
  return s;
}

}  // namespace

TEST_SUITE("rearrangefn") {
  TEST_CASE("layer profile") {
    const auto lat = lat2(32);
    Rng rng(1);
    const auto u = random_fn(lat, rng);
    const auto lp = layer_profile(u);
    CHECK(std::is_sorted(lp.values.rbegin(), lp.values.rend()));
    CHECK(lp.integral(0.0, lp.total_mass) == doctest::Approx(direct_integral(u, 1.0)).epsilon(1e-12));
    CHECK(lp(lp.total_mass + 1.0) == 0.0);
    CHECK(lp(0.0) == doctest::Approx(u.max_value()));
  }

  TEST_CASE("Schwarz: radial, decreasing, same integrals") {
    const auto lat = lat2();
    Rng rng(2);
    for (int k = 0; k < 5; ++k) {
      const auto u = random_fn(lat, rng);
      const auto s = schwarz_symmetrize_fn(u);
      std::vector<std::size_t> idx(lat->size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(),
                       [&](auto a, auto b) { return lat->radius_key(a) < lat->radius_key(b); });
      for (std::size_t i = 1; i < idx.size(); ++i) CHECK(s.values[idx[i]] <= s.values[idx[i - 1]]);
      CHECK(direct_integral(s, 1.0) == doctest::Approx(direct_integral(u, 1.0)).epsilon(1e-10));
      CHECK(s.max_value() <= u.max_value());
      CHECK(equimeasurability_check(u, s).passed);
    }
  }

  TEST_CASE("Steiner: decreasing outward, slices preserved") {
    const auto lat = lat2();
    Rng rng(3);
    const auto u = random_fn(lat, rng);
    const auto s = steiner_symmetrize_fn(u, 0);
    const int N = lat->N();
    for (int j = 0; j < N; ++j) {
      // fill order: N/2-1, N/2, N/2-2, N/2+1, ...
      std::vector<double> line;
      for (int k = 0; k < N / 2; ++k) {
        line.push_back(s.values[lat->index(N / 2 - 1 - k, j)]);
        line.push_back(s.values[lat->index(N / 2 + k, j)]);
      }
      CHECK(std::is_sorted(line.rbegin(), line.rend()));
      // mirror cells differ by at most one step of the fill
      for (int k = 0; k + 2 < N; k += 2) CHECK(line[k] - line[k + 1] <= line[k] - line[k + 2] + 1e-15);
    }
    CHECK(slice_equimeasurability(u, s) <= 1.0);
    CHECK(direct_integral(s, 1.0) == doctest::Approx(direct_integral(u, 1.0)).epsilon(1e-10));
  }

  TEST_CASE("Steiner with flat density permutes each line") {
    const auto lat = lat2(64, 2.5, 0.0);
    Rng rng(8);
    const auto u = random_fn(lat, rng);
    const auto s = steiner_symmetrize_fn(u, 1);
    for (int i = 0; i < lat->N(); ++i) {
      std::vector<double> a, b;
      for (int j = 0; j < lat->N(); ++j) {
        a.push_back(u.values[lat->index(i, j)]);
        b.push_back(s.values[lat->index(i, j)]);
      }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }

  TEST_CASE("distribution function of an indicator") {
    const auto lat = lat2(64);
    const auto set = rasterize(lat, ball({0.2, 0.1, 0}, 0.7));
    const GridFunction u(lat, set.occ);
    CHECK(distribution_fn(u, 0.5) == doctest::Approx(grid_measure(set)).epsilon(1e-12));
    CHECK(distribution_fn(u, 1.0) == 0.0);
  }

  TEST_CASE("rearrangement inequalities on random pairs") {
    const auto lat = lat2();
    Rng rng(4);
    for (int k = 0; k < 4; ++k) {
      const auto u = random_fn(lat, rng);
      const auto v = random_fn(lat, rng);
      for (SymMode mode : {SymMode::kSteiner, SymMode::kSchwarz}) {
        for (PropertyKind kind : {PropertyKind::kCavalieri, PropertyKind::kHardyLittlewood,
                                  PropertyKind::kNonexpansivity, PropertyKind::kSupnormContraction,
                                  PropertyKind::kCorrelation}) {
          const auto rep = property_check(u, v, kind, mode);
          INFO(to_string(kind), " ", to_string(mode), " deficit ", rep.deficit);
          CHECK(rep.passed);
        }
        PropertyOptions opt;
        opt.correlation = "min";
        CHECK(property_check(u, v, PropertyKind::kCorrelation, mode, opt).passed);
      }
    }
  }

  TEST_CASE("Hardy-Littlewood by direct sums") {
    const auto lat = lat2(64);
    Rng rng(5);
    const auto u = random_fn(lat, rng);
    const auto v = random_fn(lat, rng);
    const auto us = schwarz_symmetrize_fn(u);
    const auto vs = schwarz_symmetrize_fn(v);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < lat->size(); ++i) {
      a += us.values[i] * vs.values[i] * lat->cell_mass(i);
      b += u.values[i] * v.values[i] * lat->cell_mass(i);
    }
    CHECK(a >= b * (1.0 - 1e-12));
  }

  TEST_CASE("Pólya-Szegő for a recentered bump") {
    const auto lat = lat2(128, 2.5, 1.0);
    const auto u = sample_bumps(lat, {Bump{{0.6, 0.3, 0.0}, 1.0, 0.6}});
    for (double p : {1.0, 2.0, 3.0}) {
      const auto rep = dirichlet_functional(u, p, SymMode::kSchwarz);
      CHECK(rep.passed);
      CHECK(rep.deficit > 0.0);
    }
  }

  TEST_CASE("modulus of continuity does not grow") {
    const auto lat = lat2(96);
    Rng rng(6);
    const auto bumps = random_bumps(rng, 2, 2.5);
    const auto u = sample_bumps(lat, bumps);
    const auto s = schwarz_symmetrize_fn(u);
    // cell-level averaging may move values by up to 2Δ·Lip
    const double slack = 2.0 * lat->delta() * bump_lipschitz(bumps);
    for (double t : {0.2, 0.4, 0.8}) CHECK(modulus_of_continuity(s, t) <= modulus_of_continuity(u, t) + slack);
  }

  TEST_CASE("mode and kind names") {
    CHECK(sym_mode_from_string("steiner") == SymMode::kSteiner);
    CHECK(property_kind_from_string("hardy_littlewood") == PropertyKind::kHardyLittlewood);
    CHECK_THROWS_AS(sym_mode_from_string("round"), ParameterError);
  }

  TEST_CASE("mismatched lattices are rejected") {
    Rng rng(7);
    const auto u = random_fn(lat2(32), rng);
    const auto v = random_fn(lat2(64), rng);
    CHECK_THROWS_AS(property_check(u, v, PropertyKind::kHardyLittlewood, SymMode::kSchwarz), Error);
  }
}
