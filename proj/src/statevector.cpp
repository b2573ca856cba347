// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace shotsim {

namespace {

unsigned qubit_count_of(std::span<const cplx> amps) {
  return static_cast<unsigned>(std::countr_zero(amps.size()));
}

void check_targets(std::span<const cplx> amps, std::span<const unsigned> qubits, unsigned want) {
  if (qubits.size() != want) {
    throw std::invalid_argument("matrix dimension does not match target count");
  }
  const unsigned n = qubit_count_of(amps);
  uint64_t seen = 0;
  for (unsigned q : qubits) {
    if (q >= n) throw std::invalid_argument("target qubit out of range");
    if (seen & one_bit(q)) throw std::invalid_argument("duplicate target qubit");
    seen |= one_bit(q);
  }
}

// Row-major k-qubit matrix applied through gather/scatter groups; handles
// any k, used for k >= 3 (1- and 2-qubit gates go through the kernels).
void apply_matrix_generic(std::span<cplx> amps, const GateMatrix& m,
                          std::span<const unsigned> qubits) {
  const unsigned n = qubit_count_of(amps);
  const unsigned k = m.num_qubits;
  const uint64_t side = one_bit(k);
  std::vector<unsigned> sorted(qubits.begin(), qubits.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<uint64_t> offsets(side);
  for (uint64_t l = 0; l < side; ++l) offsets[l] = scatter_bits(l, qubits);
  std::vector<cplx> in(side), out(side);
  const uint64_t groups = one_bit(n - k);
  for (uint64_t g = 0; g < groups; ++g) {
    const uint64_t base = expand_index(g, sorted);
    for (uint64_t l = 0; l < side; ++l) in[l] = amps[base + offsets[l]];
    for (uint64_t r = 0; r < side; ++r) {
      cplx acc = 0;
      for (uint64_t c = 0; c < side; ++c) acc += m.entries[r * side + c] * in[c];
      out[r] = acc;
    }
    for (uint64_t l = 0; l < side; ++l) amps[base + offsets[l]] = out[l];
  }
}

double expval_generic(std::span<const cplx> amps, const GateMatrix& m,
                      std::span<const unsigned> qubits) {
  const unsigned n = qubit_count_of(amps);
  const unsigned k = m.num_qubits;
  const uint64_t side = one_bit(k);
  std::vector<unsigned> sorted(qubits.begin(), qubits.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<uint64_t> offsets(side);
  for (uint64_t l = 0; l < side; ++l) offsets[l] = scatter_bits(l, qubits);
  const uint64_t groups = one_bit(n - k);
  std::vector<double> partials(groups);
  std::vector<cplx> in(side);
  for (uint64_t g = 0; g < groups; ++g) {
    const uint64_t base = expand_index(g, sorted);
    for (uint64_t l = 0; l < side; ++l) in[l] = amps[base + offsets[l]];
    double s = 0.0;
    for (uint64_t r = 0; r < side; ++r) {
      cplx acc = 0;
      for (uint64_t c = 0; c < side; ++c) acc += m.entries[r * side + c] * in[c];
      s += acc.real() * acc.real() + acc.imag() * acc.imag();
    }
    partials[g] = s;
  }
  return pairwise_sum(partials);
}

constexpr uint64_t kProbBlock = 512;

}  // namespace

Amplitudes::Amplitudes(unsigned n) : n_(n), data_(one_bit(n)) {
  if (n < 1 || n > 30) throw std::invalid_argument("qubit count must be in [1, 30]");
  data_[0] = 1.0;
}

void Amplitudes::reset_zero_state() {
  std::fill(data_.begin(), data_.end(), cplx{});
  data_[0] = 1.0;
}

void apply_matrix(std::span<cplx> amps, const GateMatrix& m, std::span<const unsigned> qubits) {
  check_targets(amps, qubits, m.num_qubits);
  const KernelTable& k = active_kernels();
  switch (m.num_qubits) {
    case 1:
      k.apply_matrix1(amps.data(), amps.size(), qubits[0], m.entries.data());
      break;
    case 2:
      k.apply_matrix2(amps.data(), amps.size(), qubits[0], qubits[1], m.entries.data());
      break;
    default:
      apply_matrix_generic(amps, m, qubits);
      break;
  }
}

void apply_matrix_scaled(std::span<cplx> amps, const GateMatrix& m,
                         std::span<const unsigned> qubits, double prob) {
  if (prob <= 0.0) throw DegenerateDistribution("channel branch has zero probability");
  GateMatrix scaled = m;
  const double inv = 1.0 / std::sqrt(prob);
  for (cplx& e : scaled.entries) e *= inv;
  apply_matrix(amps, scaled, qubits);
}

void apply_pauli_fused(std::span<cplx> amps, const PauliMasks& masks) {
  if (masks.x_mask >= amps.size() || masks.z_mask >= amps.size()) {
    throw std::invalid_argument("pauli mask out of range for state");
  }
  active_kernels().apply_pauli(amps.data(), amps.size(), masks);
}

double expval_matrix(std::span<const cplx> amps, const GateMatrix& m,
                     std::span<const unsigned> qubits) {
  check_targets(amps, qubits, m.num_qubits);
  if (m.num_qubits == 1) {
    return active_kernels().expval_matrix1(amps.data(), amps.size(), qubits[0],
                                           m.entries.data());
  }
  return expval_generic(amps, m, qubits);
}

double norm_sq(std::span<const cplx> amps) {
  return active_kernels().norm_sq(amps.data(), amps.size());
}

double outcome_probability(std::span<const cplx> amps, std::span<const unsigned> qubits,
                           uint64_t outcome) {
  const unsigned n = qubit_count_of(amps);
  std::vector<unsigned> sorted(qubits.begin(), qubits.end());
  std::sort(sorted.begin(), sorted.end());
  const uint64_t offset = scatter_bits(outcome, qubits);
  const uint64_t groups = one_bit(n - static_cast<unsigned>(qubits.size()));
  auto block = [&](uint64_t begin, uint64_t end) {
    double s = 0.0;
    for (uint64_t g = begin; g < end; ++g) {
      const cplx v = amps[expand_index(g, sorted) | offset];
      s += v.real() * v.real() + v.imag() * v.imag();
    }
    return s;
  };
  if (groups <= kProbBlock) return block(0, groups);
  std::vector<double> partials;
  partials.reserve((groups + kProbBlock - 1) / kProbBlock);
  for (uint64_t g = 0; g < groups; g += kProbBlock) {
    partials.push_back(block(g, std::min(g + kProbBlock, groups)));
  }
  return pairwise_sum(partials);
}

std::vector<double> probabilities(std::span<const cplx> amps, std::span<const unsigned> qubits) {
  const uint64_t outcomes = one_bit(static_cast<unsigned>(qubits.size()));
  std::vector<double> out(outcomes);
  for (uint64_t m = 0; m < outcomes; ++m) out[m] = outcome_probability(amps, qubits, m);
  return out;
}

void project_and_renormalize(std::span<cplx> amps, std::span<const unsigned> qubits,
                             uint64_t outcome, double prob) {
  if (prob <= 0.0) throw DegenerateDistribution("collapse onto zero-probability outcome");
  uint64_t qmask = 0;
  for (unsigned q : qubits) qmask |= one_bit(q);
  const uint64_t offset = scatter_bits(outcome, qubits);
  const double inv = 1.0 / std::sqrt(prob);
  for (uint64_t j = 0; j < amps.size(); ++j) {
    amps[j] = ((j & qmask) == offset) ? amps[j] * inv : cplx{};
  }
}

size_t pick_outcome(std::span<const double> probs, double u) {
  double cum = 0.0;
  size_t last_nonzero = probs.size();
  for (size_t m = 0; m < probs.size(); ++m) {
    cum += probs[m];
    if (u < cum) return m;
    if (probs[m] > 0.0) last_nonzero = m;
  }
  if (last_nonzero == probs.size()) {
    throw DegenerateDistribution("distribution sums to zero");
  }
  return last_nonzero;
}

std::vector<uint64_t> sample_outcomes(std::span<const cplx> amps,
                                      std::span<const unsigned> qubits,
                                      std::span<const uint64_t> shot_ids, uint64_t seed,
                                      uint64_t event) {
  const std::vector<double> probs = probabilities(amps, qubits);
  std::vector<uint64_t> out;
  out.reserve(shot_ids.size());
  for (uint64_t shot : shot_ids) {
    out.push_back(pick_outcome(probs, uniform(seed, shot, event)));
  }
  return out;
}

Counts sample_counts(std::span<const cplx> amps, std::span<const unsigned> qubits,
                     uint64_t shots, ShotRng rng, uint64_t event) {
  std::vector<uint64_t> ids(shots);
  for (uint64_t s = 0; s < shots; ++s) ids[s] = s;
  const auto outcomes = sample_outcomes(amps, qubits, ids, rng.seed, event);
  Counts counts;
  const unsigned width = static_cast<unsigned>(qubits.size());
  for (uint64_t v : outcomes) counts[bitstring(v, width)] += 1;
  return counts;
}

}  // namespace shotsim
