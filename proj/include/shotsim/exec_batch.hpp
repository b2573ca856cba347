// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "shotsim/exec.hpp"
#include "shotsim/statevector.hpp"

namespace shotsim {

/// Shot owning iteration i of a batched dispatch whose per-shot iteration
/// space has 2^(n_q - n_g) entries: floor(i / 2^(n_q - n_g)).
inline uint64_t shot_index(uint64_t i, unsigned n_q, unsigned n_g) {
  return i >> (n_q - n_g);
}

// Lockstep multi-shot storage: one contiguous amplitude array holding all
// segments, per-shot classical registers, and reusable parameter buffers
// (per-shot draws, masks, accumulators, pending flags). Every batched
// operation is one counted dispatch regardless of the shot count; inside a
// dispatch, segments run through the same single-state kernels the naive
// executor uses, so segment s stays bit-identical to naive shot s.
class BatchState {
 public:
  BatchState(unsigned num_qubits, std::vector<uint64_t> shot_ids, uint64_t seed);

  uint64_t size() const { return shot_ids_.size(); }
  unsigned num_qubits() const { return n_; }
  uint64_t shot_id(uint64_t s) const { return shot_ids_[s]; }
  uint64_t creg(uint64_t s) const { return cregs_[s]; }
  uint64_t dispatches() const { return dispatches_; }
  std::span<cplx> segment(uint64_t s);
  std::span<const cplx> segment(uint64_t s) const;

  /// One dispatch; shots failing the op's condition are left untouched.
  void apply_gate(const ProgramOp& op);

  /// Host-side runtime sampling; zero dispatches when every shot sampled
  /// identity, otherwise one dispatch with per-shot masks.
  void apply_pauli_site(const ProgramOp& op);

  /// Full loop over all matrices (no early host exit): per matrix, one
  /// expectation dispatch over unresolved segments and one multiplication
  /// dispatch over the segments whose accumulation just crossed their draw.
  void apply_kraus_site(const ProgramOp& op, const KrausError& kraus);

  /// Outcome loop (2 dispatches per outcome plus a slack-fallback
  /// dispatch); measures write clbits, resets X-correct instead.
  void apply_measure_reset(const ProgramOp& op);

  /// Terminal sampling from each segment's joint distribution; one
  /// dispatch. Writes the sampled bits into the classical registers.
  void sample_terminal(const NoisyCircuit& program);

  /// Executes the whole instrumented program.
  void run(const NoisyCircuit& program, bool check_norms = false);

  // Test entry points with explicit per-shot draws in place of the keyed
  // stream.
  void apply_pauli_site_with(const ProgramOp& op, std::span<const double> u);
  void apply_kraus_site_with(const ProgramOp& op, const KrausError& kraus,
                             std::span<const double> u);
  void apply_measure_reset_with(const ProgramOp& op, std::span<const double> u);

 private:
  void fill_active(const std::optional<Condition>& condition);
  void fill_draws(uint64_t event);

  unsigned n_;
  uint64_t seed_;
  std::vector<cplx> amps_;
  std::vector<uint64_t> shot_ids_;
  std::vector<uint64_t> cregs_;
  uint64_t dispatches_ = 0;
  // Parameter buffers, refilled per dispatch.
  std::vector<uint8_t> active_;
  std::vector<double> u_;
  std::vector<PauliMasks> masks_;
  std::vector<uint8_t> skip_;
  std::vector<double> cum_;
  std::vector<double> sel_p_;
  std::vector<uint8_t> pending_;
  std::vector<uint8_t> done_;
  std::vector<double> probs_;  // S x 2^k, measure outcome loop
};

}  // namespace shotsim
