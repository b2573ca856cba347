// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace shotsim {

// Counter-based uniform stream (Philox-4x32-10, Salmon et al. SC'11).
//
// Every random decision in the simulator reads uniform(seed, shot, event):
// a pure function of its key. Executors may therefore consume draws in any
// order (per shot, per batch, or grouped per branched state) and still make
// bit-identical decisions for a given shot.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

/// The t-th uniform double in [0,1) for (seed, shot). Never returns 1.0.
double uniform(uint64_t seed, uint64_t shot, uint64_t event);

/// Keyed stream handle; carries the run seed around executor plumbing.
struct ShotRng {
  uint64_t seed = 0;
  double at(uint64_t shot, uint64_t event) const { return uniform(seed, shot, event); }
};

}  // namespace shotsim
