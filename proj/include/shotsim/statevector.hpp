// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "shotsim/circuit.hpp"
#include "shotsim/common.hpp"
#include "shotsim/kernels.hpp"
#include "shotsim/result.hpp"
#include "shotsim/rng.hpp"

namespace shotsim {

/// 2^n double-precision amplitudes of an n-qubit pure state.
class Amplitudes {
 public:
  explicit Amplitudes(unsigned n);

  unsigned num_qubits() const { return n_; }
  uint64_t dim() const { return one_bit(n_); }
  std::span<cplx> view() { return data_; }
  std::span<const cplx> view() const { return data_; }
  cplx& operator[](uint64_t i) { return data_[i]; }
  const cplx& operator[](uint64_t i) const { return data_[i]; }

  void reset_zero_state();

 private:
  unsigned n_;
  std::vector<cplx> data_;
};

// All operations below act on one state segment (a full Amplitudes or one
// shot's slice of batched storage). Every executor funnels through these,
// which is what makes cross-strategy counts bit-identical.

/// state := (M on the listed qubits, identity elsewhere) * state.
/// qubits[0] is the least-significant axis of the matrix index space.
void apply_matrix(std::span<cplx> amps, const GateMatrix& m, std::span<const unsigned> qubits);

/// apply_matrix with the matrix scaled by 1/sqrt(prob) (channel branch
/// application).
void apply_matrix_scaled(std::span<cplx> amps, const GateMatrix& m,
                         std::span<const unsigned> qubits, double prob);

/// One-pass tensor-product Pauli application in destination-sign form:
/// new[i0] = (-i)^num_y * (-1)^popcount(i0 & z_mask) * old[i0 ^ x_mask].
void apply_pauli_fused(std::span<cplx> amps, const PauliMasks& masks);

/// <psi|M†M|psi>: the squared norm the state would have after apply_matrix,
/// computed without mutating or renormalizing.
double expval_matrix(std::span<const cplx> amps, const GateMatrix& m,
                     std::span<const unsigned> qubits);

double norm_sq(std::span<const cplx> amps);

/// Probability that the listed qubits read `outcome` (qubits[0] = bit 0).
double outcome_probability(std::span<const cplx> amps, std::span<const unsigned> qubits,
                           uint64_t outcome);

/// All 2^k outcome probabilities for a k-qubit subset; sums to 1 within
/// 1e-10 for a normalized state.
std::vector<double> probabilities(std::span<const cplx> amps, std::span<const unsigned> qubits);

/// Zeroes amplitudes inconsistent with `outcome` on the listed qubits and
/// divides survivors by sqrt(prob). Throws DegenerateDistribution when
/// prob <= 0.
void project_and_renormalize(std::span<cplx> amps, std::span<const unsigned> qubits,
                             uint64_t outcome, double prob);

/// First index m with u < probs[0] + ... + probs[m] (strict, so
/// zero-probability outcomes are unreachable). When accumulated slack
/// leaves no crossing, falls back to the last outcome with nonzero
/// probability; throws DegenerateDistribution if all are zero.
size_t pick_outcome(std::span<const double> probs, double u);

/// One outcome per shot id, drawn from the state's distribution over the
/// listed qubits with u = uniform(seed, shot, event). Does not modify the
/// state.
std::vector<uint64_t> sample_outcomes(std::span<const cplx> amps,
                                      std::span<const unsigned> qubits,
                                      std::span<const uint64_t> shot_ids, uint64_t seed,
                                      uint64_t event);

/// Histogram form of sample_outcomes for shot ids 0..shots-1; keys are
/// outcome bitstrings over the listed qubits (MSB first).
Counts sample_counts(std::span<const cplx> amps, std::span<const unsigned> qubits,
                     uint64_t shots, ShotRng rng, uint64_t event = 0);

}  // namespace shotsim
