// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/common.hpp"

#include <algorithm>
#include <thread>

namespace shotsim {

namespace {

double pairwise_sum_impl(const double* v, size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (size_t i = 0; i < count; ++i) s += v[i];
    return s;
  }
  const size_t half = count / 2;
  return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, count - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return pairwise_sum_impl(values.data(), values.size());
}

void parallel_chunks(unsigned workers, uint64_t count,
                     const std::function<void(uint64_t, uint64_t)>& fn) {
  if (count == 0) return;
  const uint64_t nthreads = std::min<uint64_t>(std::max(1u, workers), count);
  if (nthreads <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const uint64_t base = count / nthreads;
  const uint64_t extra = count % nthreads;
  uint64_t begin = 0;
  for (uint64_t t = 0; t < nthreads; ++t) {
    const uint64_t len = base + (t < extra ? 1 : 0);
    pool.emplace_back(fn, begin, begin + len);
    begin += len;
  }
  for (auto& th : pool) th.join();
}

}  // namespace shotsim
