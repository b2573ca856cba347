// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shotsim/exec.hpp"

namespace shotsim {

// Sweep configuration; list fields form a cartesian product of cells.
struct BenchConfig {
  std::string circuit = "qft";
  std::vector<unsigned> qubits;
  uint64_t shots = 4000;
  std::string noise = "pauli";  // pauli | kraus | none
  std::vector<double> error_rates = {0.01};
  std::vector<std::string> strategies = {"naive", "batch", "branch"};
  std::vector<unsigned> workers = {1};
  uint64_t seed = 1;
  uint64_t budget = 64;
  uint64_t max_batch_size = 0;
  unsigned repeats = 5;           // timed repetitions after one warm-up run
  std::string out_path = "results.csv";
  std::string kernels = "auto";
  uint64_t mem_limit_bytes = 0;
};

void validate_config(const BenchConfig& config);  // throws ConfigError

Circuit make_bench_circuit(const std::string& name, unsigned qubits);

/// Exit codes: 0 full sweep, 2 cross-strategy checksum mismatch,
/// 3 configuration error. Capacity errors mark their row and the sweep
/// continues.
int run_bench(const BenchConfig& config, std::ostream& out, std::ostream& err);

/// TVD-vs-exact report for small registers; cells with more than 6 qubits
/// are skipped with a note.
int emit_tvd_report(const BenchConfig& config, std::ostream& out, std::ostream& err);

}  // namespace shotsim
