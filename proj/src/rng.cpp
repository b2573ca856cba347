// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/rng.hpp"

namespace shotsim {

namespace {

constexpr uint32_t kWeylA = 0x9E3779B9;
constexpr uint32_t kWeylB = 0xBB67AE85;
constexpr uint32_t kMulA = 0xD2511F53;
constexpr uint32_t kMulB = 0xCD9E8D57;

inline void round_once(std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
  const uint64_t prod0 = static_cast<uint64_t>(kMulA) * ctr[0];
  const uint64_t prod1 = static_cast<uint64_t>(kMulB) * ctr[2];
  const uint32_t lo0 = static_cast<uint32_t>(prod0);
  const uint32_t hi0 = static_cast<uint32_t>(prod0 >> 32);
  const uint32_t lo1 = static_cast<uint32_t>(prod1);
  const uint32_t hi1 = static_cast<uint32_t>(prod1 >> 32);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    round_once(counter, key);
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return counter;
}

double uniform(uint64_t seed, uint64_t shot, uint64_t event) {
  const std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(shot), static_cast<uint32_t>(shot >> 32),
      static_cast<uint32_t>(event), static_cast<uint32_t>(event >> 32)};
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                       static_cast<uint32_t>(seed >> 32)};
  const std::array<uint32_t, 4> out = philox4x32(ctr, key);
  const uint64_t bits = (static_cast<uint64_t>(out[0]) << 32) | out[1];
  // Top 53 bits mapped to [0,1); 1.0 is unreachable.
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace shotsim
