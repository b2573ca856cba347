// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <vector>

#include "shotsim/program.hpp"
#include "shotsim/result.hpp"

namespace shotsim {

// Exact density-matrix evolution for small registers (n <= 10). This is
// the statistical reference the Monte Carlo executors are validated
// against, so its gate/channel application is written independently of the
// state-vector kernels.
class DensityMatrix {
 public:
  explicit DensityMatrix(unsigned n);  // |0...0><0...0|
  static DensityMatrix from_entries(unsigned n, std::vector<cplx> entries);

  unsigned num_qubits() const { return n_; }
  uint64_t dim() const { return one_bit(n_); }
  cplx at(uint64_t r, uint64_t c) const { return data_[r * dim() + c]; }
  std::span<const cplx> entries() const { return data_; }

  /// rho := M rho M† with M embedded on the listed qubits (unitary or
  /// Kraus branch; no normalization).
  void conjugate_by(const GateMatrix& m, std::span<const unsigned> qubits);

  /// rho := U rho U†; trace is preserved.
  void evolve_unitary(const GateMatrix& m, std::span<const unsigned> qubits);

  /// Pauli mixture: rho := sum_i p_i P_i rho P_i†.
  void evolve_pauli(const PauliError& channel, std::span<const unsigned> qubits);

  /// Kraus channel: rho := sum_i K_i rho K_i†.
  void evolve_kraus(const KrausError& channel, std::span<const unsigned> qubits);

  void evolve_channel(const ErrorChannel& channel, std::span<const unsigned> qubits);

  double trace_real() const;
  double hermiticity_defect() const;

  /// Diagonal marginal over the listed qubits (qubits[0] = bit 0).
  std::vector<double> diagonal_marginal(std::span<const unsigned> qubits) const;

 private:
  unsigned n_;
  std::vector<cplx> data_;  // row-major dim x dim
};

/// Exact outcome distribution over the listed qubits after evolving the
/// instrumented program from |0...0>. Terminal measurements are marginals;
/// intermediate measurements branch into weighted trajectories (at most 2
/// such sites). Resets become channels.
std::vector<double> exact_distribution(const NoisyCircuit& program,
                                       std::span<const unsigned> qubits);

/// Exact distribution of final classical-register values, comparable with
/// executor counts.
std::map<uint64_t, double> exact_creg_distribution(const NoisyCircuit& program);

/// Total variation distance between executor counts and the exact register
/// distribution.
double tvd_vs_exact(const Counts& counts, uint64_t shots,
                    const std::map<uint64_t, double>& exact);

}  // namespace shotsim
