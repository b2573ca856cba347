// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/result.hpp"

namespace shotsim {

std::string bitstring(uint64_t value, unsigned width) {
  std::string s(width, '0');
  for (unsigned b = 0; b < width; ++b) {
    if ((value >> b) & 1) s[width - 1 - b] = '1';
  }
  return s;
}

Counts merge_counts(std::span<const Counts> partials) {
  Counts out;
  for (const Counts& part : partials) {
    for (const auto& [key, n] : part) out[key] += n;
  }
  return out;
}

uint64_t counts_checksum(const Counts& counts) {
  // FNV-1a over "key=count;" in map (sorted) order.
  uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const char* data, size_t len) {
    for (size_t i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(data[i]);
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& [key, n] : counts) {
    mix(key.data(), key.size());
    const std::string v = "=" + std::to_string(n) + ";";
    mix(v.data(), v.size());
  }
  return h;
}

Counts counts_from_values(std::span<const uint64_t> values, unsigned width, bool has_measure) {
  Counts out;
  if (!has_measure) {
    if (!values.empty()) out[""] = values.size();
    return out;
  }
  for (uint64_t v : values) out[bitstring(v, width)] += 1;
  return out;
}

}  // namespace shotsim
