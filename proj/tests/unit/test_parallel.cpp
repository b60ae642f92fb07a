// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "murearr/parallel.hpp"
#include "murearr/rearrangefn.hpp"
#include "murearr/shapes.hpp"

using namespace murearr;

namespace {

struct CapGuard {
  ~CapGuard() { set_thread_cap(0); }
};

}  // namespace

TEST_SUITE("parallel") {
  TEST_CASE("parallel_for visits every index once") {
    CapGuard g;
    set_thread_cap(4);
    std::vector<int> hits(10007, 0);
    parallel_for(hits.size(), 97, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) CHECK(h == 1);
  }

  TEST_CASE("sums are bitwise independent of the thread cap") {
    CapGuard g;
    auto term = [](std::size_t i) { return std::sin(0.001 * i) * 1e3 + 1e-9 * i; };
    set_thread_cap(1);
    const double a = deterministic_sum(100000, term);
    set_thread_cap(3);
    const double b = deterministic_sum(100000, term);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  }

  TEST_CASE("symmetrization is bitwise independent of the thread cap") {
    CapGuard g;
    const auto lat = make_lattice(GridSpec{2, 96, 2.5}, RadialDensity(2, 1.0));
    Rng rng(1);
    const auto u = sample_bumps(lat, random_bumps(rng, 2, 2.5));
    set_thread_cap(1);
    const auto a = schwarz_symmetrize_fn(u).values;
    const auto sa = steiner_symmetrize_fn(u, 1).values;
    set_thread_cap(4);
    CHECK(schwarz_symmetrize_fn(u).values == a);
    CHECK(steiner_symmetrize_fn(u, 1).values == sa);
  }

  TEST_CASE("rng is reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
      const int k = c.integer(-2, 3);
      CHECK(k >= -2);
      CHECK(k <= 3);
    }
  }
}
