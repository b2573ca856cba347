// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "shotsim/program.hpp"
#include "shotsim/result.hpp"

namespace shotsim {

struct RunOptions {
  uint64_t shots = 1;
  uint64_t seed = 0;
  unsigned workers = 1;
  uint64_t max_batch_size = 0;   // batch: 0 derives from the memory limit
  uint64_t branch_budget = 64;   // branch: max live states
  uint64_t mem_limit_bytes = 0;  // 0: SHOTSIM_MEM_LIMIT_BYTES env or 1 GiB
  bool record_shot_values = false;
  bool check_norms = false;       // verify norm 1 after every op (tests)
  bool collect_leaf_stats = false;
};

// All three executors satisfy the same contract: identical
// (program, shots, seed) produce identical counts, for any workers,
// batch size or budget. The per-(shot, event) keyed RNG is what makes the
// naive executor an exact oracle for the optimized ones.
RunResult run_naive(const NoisyCircuit& program, const RunOptions& options);
RunResult run_batch(const NoisyCircuit& program, const RunOptions& options);
RunResult run_branch(const NoisyCircuit& program, const RunOptions& options);

using ExecutorFn = RunResult (*)(const NoisyCircuit&, const RunOptions&);

/// naive | batch | branch; throws ConfigError for anything else.
ExecutorFn executor_by_name(std::string_view name);

/// SHOTSIM_MEM_LIMIT_BYTES when set, otherwise 1 GiB.
uint64_t default_mem_limit_bytes();

}  // namespace shotsim
