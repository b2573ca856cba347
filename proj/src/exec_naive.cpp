// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/exec_naive.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace shotsim {

uint64_t default_mem_limit_bytes() {
  if (const char* env = std::getenv("SHOTSIM_MEM_LIMIT_BYTES")) {
    const uint64_t v = std::strtoull(env, nullptr, 10);
    if (v > 0) return v;
  }
  return uint64_t{1} << 30;
}

ExecutorFn executor_by_name(std::string_view name) {
  if (name == "naive") return &run_naive;
  if (name == "batch") return &run_batch;
  if (name == "branch") return &run_branch;
  throw ConfigError("unknown strategy: " + std::string(name));
}

void apply_kraus_single(std::span<cplx> amps, const KrausError& kraus,
                        std::span<const unsigned> qubits, double u) {
  double cum = 0.0;
  double p = 0.0;
  for (const GateMatrix& m : kraus.matrices) {
    p = expval_matrix(amps, m, qubits);
    cum += p;
    if (u < cum) {
      apply_matrix_scaled(amps, m, qubits, p);
      return;
    }
  }
  apply_matrix_scaled(amps, kraus.matrices.back(), qubits, p);
}

uint64_t measure_single(std::span<cplx> amps, std::span<const unsigned> qubits, double u) {
  const std::vector<double> probs = probabilities(amps, qubits);
  const size_t m = pick_outcome(probs, u);
  project_and_renormalize(amps, qubits, m, probs[m]);
  return m;
}

uint64_t reset_single(std::span<cplx> amps, std::span<const unsigned> qubits, double u) {
  const uint64_t m = measure_single(amps, qubits, u);
  if (m != 0) {
    PauliMasks x;
    x.x_mask = scatter_bits(m, qubits);
    x.x_max = static_cast<unsigned>(std::bit_width(x.x_mask) - 1);
    apply_pauli_fused(amps, x);
  }
  return m;
}

size_t pick_site_term(std::span<const double> cumulative, double u) {
  for (size_t i = 0; i < cumulative.size(); ++i) {
    if (u < cumulative[i]) return i;
  }
  return cumulative.size() - 1;
}

namespace {

void write_measure_bits(uint64_t& creg, std::span<const unsigned> clbits, uint64_t outcome) {
  for (size_t b = 0; b < clbits.size(); ++b) {
    const uint64_t bit = (outcome >> b) & 1;
    creg = (creg & ~one_bit(clbits[b])) | (bit << clbits[b]);
  }
}

void check_norm_or_throw(const Amplitudes& state, size_t op_index) {
  const double n = norm_sq(state.view());
  if (std::abs(n - 1.0) > 1e-10) {
    throw std::runtime_error("norm drifted to " + std::to_string(n) + " after op " +
                             std::to_string(op_index));
  }
}

}  // namespace

uint64_t run_single_shot(const NoisyCircuit& program, uint64_t shot, uint64_t seed,
                         Amplitudes& state, bool check_norms) {
  state.reset_zero_state();
  uint64_t creg = 0;
  const size_t end =
      program.sampling_eligible ? program.terminal_measure_begin : program.ops.size();
  for (size_t i = 0; i < end; ++i) {
    const ProgramOp& op = program.ops[i];
    if (op.condition && !op.condition->holds(creg)) continue;
    switch (op.kind) {
      case ProgramOp::Kind::Gate:
        apply_matrix(state.view(), op.matrix, op.qubits);
        break;
      case ProgramOp::Kind::Barrier:
        break;
      case ProgramOp::Kind::PauliSite: {
        const size_t term = pick_site_term(op.term_cum, uniform(seed, shot, op.event));
        if (!op.term_identity[term]) apply_pauli_fused(state.view(), op.term_masks[term]);
        break;
      }
      case ProgramOp::Kind::KrausSite:
        apply_kraus_single(state.view(), program.kraus_channels[op.channel], op.qubits,
                           uniform(seed, shot, op.event));
        break;
      case ProgramOp::Kind::Measure: {
        const uint64_t m = measure_single(state.view(), op.qubits, uniform(seed, shot, op.event));
        write_measure_bits(creg, op.clbits, m);
        break;
      }
      case ProgramOp::Kind::Reset:
        reset_single(state.view(), op.qubits, uniform(seed, shot, op.event));
        break;
    }
    if (check_norms && op.kind != ProgramOp::Kind::Barrier) check_norm_or_throw(state, i);
  }
  if (program.sampling_eligible) {
    const std::vector<double> probs = probabilities(state.view(), program.sample_qubits);
    const uint64_t outcome = pick_outcome(probs, uniform(seed, shot, program.sampling_event()));
    creg = program.apply_sample_outcome(creg, outcome);
  }
  return creg;
}

RunResult run_naive(const NoisyCircuit& program, const RunOptions& options) {
  if (options.shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (options.workers < 1) throw std::invalid_argument("workers must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<uint64_t> values(options.shots);
  const unsigned nworkers =
      static_cast<unsigned>(std::min<uint64_t>(options.workers, options.shots));
  std::vector<Counts> partials(nworkers);
  std::atomic<unsigned> next_worker{0};
  parallel_chunks(nworkers, options.shots, [&](uint64_t begin, uint64_t end) {
    const unsigned w = next_worker.fetch_add(1);
    Amplitudes state(program.num_qubits);
    for (uint64_t s = begin; s < end; ++s) {
      values[s] = run_single_shot(program, s, options.seed, state, options.check_norms);
    }
    partials[w] = counts_from_values({values.data() + begin, values.data() + end},
                                     program.num_clbits, program.has_measure);
  });

  RunResult result;
  result.strategy = "naive";
  result.shots = options.shots;
  result.seed = options.seed;
  result.workers = options.workers;
  result.peak_states = std::min<uint64_t>(options.workers, options.shots);
  result.counts = merge_counts(partials);
  if (options.record_shot_values) result.shot_values = std::move(values);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace shotsim
