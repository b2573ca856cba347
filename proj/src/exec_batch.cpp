// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/exec_batch.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "shotsim/exec_naive.hpp"

namespace shotsim {

BatchState::BatchState(unsigned num_qubits, std::vector<uint64_t> shot_ids, uint64_t seed)
    : n_(num_qubits), seed_(seed), shot_ids_(std::move(shot_ids)) {
  const uint64_t S = shot_ids_.size();
  if (S == 0) throw std::invalid_argument("batch needs at least one shot");
  amps_.assign(S << n_, cplx{});
  for (uint64_t s = 0; s < S; ++s) amps_[s << n_] = 1.0;
  cregs_.assign(S, 0);
  active_.assign(S, 1);
  u_.assign(S, 0.0);
  masks_.assign(S, PauliMasks{});
  skip_.assign(S, 0);
  cum_.assign(S, 0.0);
  sel_p_.assign(S, 0.0);
  pending_.assign(S, 0);
  done_.assign(S, 0);
}

std::span<cplx> BatchState::segment(uint64_t s) {
  return {amps_.data() + (s << n_), one_bit(n_)};
}

std::span<const cplx> BatchState::segment(uint64_t s) const {
  return {amps_.data() + (s << n_), one_bit(n_)};
}

void BatchState::fill_active(const std::optional<Condition>& condition) {
  if (!condition) {
    std::fill(active_.begin(), active_.end(), uint8_t{1});
    return;
  }
  for (uint64_t s = 0; s < size(); ++s) active_[s] = condition->holds(cregs_[s]) ? 1 : 0;
}

void BatchState::fill_draws(uint64_t event) {
  for (uint64_t s = 0; s < size(); ++s) u_[s] = uniform(seed_, shot_ids_[s], event);
}

void BatchState::apply_gate(const ProgramOp& op) {
  fill_active(op.condition);
  ++dispatches_;
  [[maybe_unused]] const uint64_t iterations = size() << (n_ - op.matrix.num_qubits);
  assert(shot_index(iterations - 1, n_, op.matrix.num_qubits) == size() - 1);
  for (uint64_t s = 0; s < size(); ++s) {
    if (active_[s]) apply_matrix(segment(s), op.matrix, op.qubits);
  }
}

void BatchState::apply_pauli_site_with(const ProgramOp& op, std::span<const double> u) {
  fill_active(op.condition);
  bool any = false;
  for (uint64_t s = 0; s < size(); ++s) {
    if (!active_[s]) {
      skip_[s] = 1;
      continue;
    }
    const size_t term = pick_site_term(op.term_cum, u[s]);
    skip_[s] = op.term_identity[term];
    masks_[s] = op.term_masks[term];
    any = any || !skip_[s];
  }
  if (!any) return;  // identity sampled everywhere: no dispatch
  ++dispatches_;
  for (uint64_t s = 0; s < size(); ++s) {
    if (!skip_[s]) apply_pauli_fused(segment(s), masks_[s]);
  }
}

void BatchState::apply_pauli_site(const ProgramOp& op) {
  fill_draws(op.event);
  apply_pauli_site_with(op, u_);
}

void BatchState::apply_kraus_site_with(const ProgramOp& op, const KrausError& kraus,
                                       std::span<const double> u) {
  fill_active(op.condition);
  const size_t num_matrices = kraus.matrices.size();
  for (uint64_t s = 0; s < size(); ++s) {
    done_[s] = active_[s] ? 0 : 1;
    cum_[s] = 0.0;
    pending_[s] = 0;
  }
  for (size_t i = 0; i < num_matrices; ++i) {
    const GateMatrix& m = kraus.matrices[i];
    const bool last = (i + 1 == num_matrices);
    ++dispatches_;  // expectation values over unresolved segments
    for (uint64_t s = 0; s < size(); ++s) {
      if (done_[s]) continue;
      const double p = expval_matrix(segment(s), m, op.qubits);
      cum_[s] += p;
      if (u[s] < cum_[s] || last) {
        pending_[s] = 1;
        sel_p_[s] = p;
      }
    }
    ++dispatches_;  // multiply into pending segments only
    for (uint64_t s = 0; s < size(); ++s) {
      if (!pending_[s]) continue;
      apply_matrix_scaled(segment(s), m, op.qubits, sel_p_[s]);
      pending_[s] = 0;
      done_[s] = 1;
    }
  }
}

void BatchState::apply_kraus_site(const ProgramOp& op, const KrausError& kraus) {
  fill_draws(op.event);
  apply_kraus_site_with(op, kraus, u_);
}

void BatchState::apply_measure_reset_with(const ProgramOp& op, std::span<const double> u) {
  fill_active(op.condition);
  const bool is_reset = op.kind == ProgramOp::Kind::Reset;
  const unsigned k = static_cast<unsigned>(op.qubits.size());
  const uint64_t outcomes = one_bit(k);
  probs_.assign(size() * outcomes, 0.0);
  for (uint64_t s = 0; s < size(); ++s) {
    done_[s] = active_[s] ? 0 : 1;
    cum_[s] = 0.0;
  }
  auto settle = [&](uint64_t s, uint64_t m, double p) {
    project_and_renormalize(segment(s), op.qubits, m, p);
    if (is_reset) {
      if (m != 0) {
        PauliMasks x;
        x.x_mask = scatter_bits(m, op.qubits);
        x.x_max = static_cast<unsigned>(std::bit_width(x.x_mask) - 1);
        apply_pauli_fused(segment(s), x);
      }
    } else {
      for (size_t b = 0; b < op.clbits.size(); ++b) {
        const uint64_t bit = (m >> b) & 1;
        cregs_[s] = (cregs_[s] & ~one_bit(op.clbits[b])) | (bit << op.clbits[b]);
      }
    }
    done_[s] = 1;
  };
  for (uint64_t m = 0; m < outcomes; ++m) {
    ++dispatches_;  // per-shot probability of this outcome
    for (uint64_t s = 0; s < size(); ++s) {
      if (done_[s]) continue;
      const double p = outcome_probability(segment(s), op.qubits, m);
      probs_[s * outcomes + m] = p;
      cum_[s] += p;
      pending_[s] = (u[s] < cum_[s]) ? 1 : 0;
    }
    ++dispatches_;  // collapse the segments that crossed this round
    for (uint64_t s = 0; s < size(); ++s) {
      if (done_[s] || !pending_[s]) continue;
      pending_[s] = 0;
      settle(s, m, probs_[s * outcomes + m]);
    }
  }
  // Rounding-slack fallback: the last outcome with nonzero probability.
  ++dispatches_;
  for (uint64_t s = 0; s < size(); ++s) {
    if (done_[s] || !active_[s]) continue;
    uint64_t m = outcomes;
    for (uint64_t j = outcomes; j-- > 0;) {
      if (probs_[s * outcomes + j] > 0.0) {
        m = j;
        break;
      }
    }
    if (m == outcomes) throw DegenerateDistribution("measured distribution sums to zero");
    settle(s, m, probs_[s * outcomes + m]);
  }
}

void BatchState::apply_measure_reset(const ProgramOp& op) {
  fill_draws(op.event);
  apply_measure_reset_with(op, u_);
}

void BatchState::sample_terminal(const NoisyCircuit& program) {
  ++dispatches_;
  for (uint64_t s = 0; s < size(); ++s) {
    const std::vector<double> probs = probabilities(segment(s), program.sample_qubits);
    const uint64_t outcome =
        pick_outcome(probs, uniform(seed_, shot_ids_[s], program.sampling_event()));
    cregs_[s] = program.apply_sample_outcome(cregs_[s], outcome);
  }
}

void BatchState::run(const NoisyCircuit& program, bool check_norms) {
  const size_t end =
      program.sampling_eligible ? program.terminal_measure_begin : program.ops.size();
  for (size_t i = 0; i < end; ++i) {
    const ProgramOp& op = program.ops[i];
    switch (op.kind) {
      case ProgramOp::Kind::Gate: apply_gate(op); break;
      case ProgramOp::Kind::Barrier: break;
      case ProgramOp::Kind::PauliSite: apply_pauli_site(op); break;
      case ProgramOp::Kind::KrausSite:
        apply_kraus_site(op, program.kraus_channels[op.channel]);
        break;
      case ProgramOp::Kind::Measure:
      case ProgramOp::Kind::Reset:
        apply_measure_reset(op);
        break;
    }
    if (check_norms && op.kind != ProgramOp::Kind::Barrier) {
      for (uint64_t s = 0; s < size(); ++s) {
        const double n = norm_sq(segment(s));
        if (std::abs(n - 1.0) > 1e-10) {
          throw std::runtime_error("batch segment norm drifted after op " + std::to_string(i));
        }
      }
    }
  }
  if (program.sampling_eligible) sample_terminal(program);
}

RunResult run_batch(const NoisyCircuit& program, const RunOptions& options) {
  if (options.shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (options.workers < 1) throw std::invalid_argument("workers must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const uint64_t limit =
      options.mem_limit_bytes > 0 ? options.mem_limit_bytes : default_mem_limit_bytes();
  const uint64_t segment_bytes = one_bit(program.num_qubits) * sizeof(cplx);
  uint64_t max_batch = options.max_batch_size;
  if (max_batch == 0) max_batch = std::max<uint64_t>(1, limit / segment_bytes);
  const uint64_t largest = std::min<uint64_t>(max_batch, options.shots);
  if (largest * segment_bytes > limit) {
    throw CapacityError("batch of " + std::to_string(largest) + " shots at " +
                        std::to_string(program.num_qubits) + " qubits needs " +
                        std::to_string(largest * segment_bytes) +
                        " bytes; lower max_batch_size or raise the memory limit");
  }

  std::vector<uint64_t> values(options.shots);
  const unsigned nworkers =
      static_cast<unsigned>(std::min<uint64_t>(options.workers, options.shots));
  std::vector<uint64_t> worker_dispatches(nworkers, 0);
  std::vector<uint64_t> worker_peak(nworkers, 0);
  std::vector<Counts> partials(nworkers);
  std::atomic<unsigned> next_worker{0};
  parallel_chunks(nworkers, options.shots, [&](uint64_t begin, uint64_t end) {
    const unsigned w = next_worker.fetch_add(1);
    uint64_t local_dispatches = 0;
    uint64_t local_peak = 0;
    for (uint64_t at = begin; at < end; at += max_batch) {
      const uint64_t len = std::min(max_batch, end - at);
      std::vector<uint64_t> ids(len);
      for (uint64_t s = 0; s < len; ++s) ids[s] = at + s;
      BatchState batch(program.num_qubits, std::move(ids), options.seed);
      batch.run(program, options.check_norms);
      for (uint64_t s = 0; s < len; ++s) values[at + s] = batch.creg(s);
      local_dispatches += batch.dispatches();
      local_peak = std::max(local_peak, len);
    }
    worker_dispatches[w] = local_dispatches;
    worker_peak[w] = local_peak;
    partials[w] = counts_from_values({values.data() + begin, values.data() + end},
                                     program.num_clbits, program.has_measure);
  });

  RunResult result;
  result.strategy = "batch";
  result.shots = options.shots;
  result.seed = options.seed;
  result.workers = options.workers;
  for (unsigned w = 0; w < nworkers; ++w) {
    result.dispatch_count += worker_dispatches[w];
    result.peak_states += worker_peak[w];
  }
  result.counts = merge_counts(partials);
  if (options.record_shot_values) result.shot_values = std::move(values);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace shotsim
