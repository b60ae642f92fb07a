// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "murearr/common.hpp"
#include "murearr/parallel.hpp"

namespace murearr {

namespace {

std::uint64_t splitmix(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::atomic<int> g_thread_override{0};

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& s : s_) s = splitmix(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

int thread_cap() {
  if (int o = g_thread_override.load(); o > 0) return o;
  static const int from_env = [] {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MU_REARRANGE_THREADS")) {
      try {
        const int v = std::stoi(env);
        if (v > 0) return v;
      } catch (const std::exception&) {
      }
    }
    return static_cast<int>(hw);
  }();
  return from_env;
}

void set_thread_cap(int threads) { g_thread_override.store(threads > 0 ? threads : 0); }

}  // namespace murearr
