// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shotsim {

using cplx = std::complex<double>;

/// Invalid run/sweep configuration (bad flag values, malformed input files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested allocation would exceed the configured memory limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A measurement or channel selection hit a zero-probability branch.
class DegenerateDistribution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr uint64_t one_bit(unsigned b) { return uint64_t{1} << b; }

inline int parity(uint64_t v) { return std::popcount(v) & 1; }

// Deposits bit b of `value` at bit position positions[b].
inline uint64_t scatter_bits(uint64_t value, std::span<const unsigned> positions) {
  uint64_t out = 0;
  for (size_t b = 0; b < positions.size(); ++b) {
    if ((value >> b) & 1) out |= one_bit(positions[b]);
  }
  return out;
}

// Collects the bits of `index` at the listed positions into a compact value
// (positions[0] becomes bit 0 of the result).
inline uint64_t gather_bits(uint64_t index, std::span<const unsigned> positions) {
  uint64_t out = 0;
  for (size_t b = 0; b < positions.size(); ++b) {
    if ((index >> positions[b]) & 1) out |= uint64_t{1} << b;
  }
  return out;
}

// Spreads the bits of `g` over the positions NOT listed in
// `sorted_positions` (ascending), leaving zeros at the listed positions.
inline uint64_t expand_index(uint64_t g, std::span<const unsigned> sorted_positions) {
  for (unsigned p : sorted_positions) {
    const uint64_t low = g & (one_bit(p) - 1);
    g = ((g >> p) << (p + 1)) | low;
  }
  return g;
}

// Fixed-tree pairwise summation; the same inputs always produce the same
// partial sums regardless of caller threading.
double pairwise_sum(std::span<const double> values);

// Runs fn over [0, count) split into at most `workers` contiguous chunks.
// Chunks must touch disjoint data; results are independent of scheduling.
void parallel_chunks(unsigned workers, uint64_t count,
                     const std::function<void(uint64_t, uint64_t)>& fn);

}  // namespace shotsim
