// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

#include "murearr/common.hpp"

namespace murearr {

/// Number of worker threads, from MU_REARRANGE_THREADS (default: all cores).
int thread_cap();

/// Overrides the thread cap for the current process (0 restores the env default).
void set_thread_cap(int threads);

/// Runs body(chunk_begin, chunk_end) over [0, n) in fixed chunks of `grain`.
/// The chunking does not depend on the thread count, so any per-chunk output
/// the body writes is identical for every degree of parallelism.
template <class Body>
void parallel_for(std::size_t n, std::size_t grain, Body&& body) {
  if (n == 0) return;
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t chunks = (n + grain - 1) / grain;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), chunks);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t b = c * grain;
    body(b, std::min(n, b + grain));
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

/// Sum of term(i) for i in [0, n). Fixed blocks, compensated within and
/// across blocks in index order: bitwise independent of the thread cap.
template <class Term>
double deterministic_sum(std::size_t n, Term&& term) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, 1, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      KahanSum s;
      const std::size_t e = std::min(n, (b + 1) * kBlock);
      for (std::size_t i = b * kBlock; i < e; ++i) s += term(i);
      partial[b] = s.value();
    }
  });
  KahanSum total;
  for (double p : partial) total += p;
  return total.value();
}

}  // namespace murearr
