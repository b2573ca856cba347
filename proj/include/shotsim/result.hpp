// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace shotsim {

/// Histogram of measured bitstrings. Keys are classical-register values
/// rendered most-significant bit first; a run with no measure at all uses
/// the single key "".
using Counts = std::map<std::string, uint64_t>;

/// `value` rendered as `width` binary digits, bit width-1 first.
std::string bitstring(uint64_t value, unsigned width);

/// Key-wise sum; associative and commutative, so worker partitioning does
/// not affect the merged result.
Counts merge_counts(std::span<const Counts> partials);

/// Order-independent fingerprint used to compare counts across strategies.
uint64_t counts_checksum(const Counts& counts);

/// Per-leaf/per-pass observability for the branching executor.
struct BranchStats {
  uint64_t peak_states = 0;
  uint64_t passes = 0;
  std::vector<uint64_t> leaf_shots;  // shots per final state, when collected
};

struct RunResult {
  Counts counts;
  double wall_seconds = 0.0;
  uint64_t dispatch_count = 0;  // batch executor
  uint64_t peak_states = 0;     // concurrently live states
  BranchStats branch;           // branch executor only
  std::string strategy;
  uint64_t shots = 0;
  uint64_t seed = 0;
  unsigned workers = 1;
  // Classical-register value per shot, kept when requested; lets the
  // harness point at the first divergent shot on a cross-strategy mismatch.
  std::vector<uint64_t> shot_values;
};

/// Builds the counts map from per-shot register values. Programs without
/// any measure map every shot to the "" key.
Counts counts_from_values(std::span<const uint64_t> values, unsigned width, bool has_measure);

}  // namespace shotsim
