// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shotsim {

namespace {

// k-qubit matrix applied to a strided view: element j lives at
// data[j * stride]. Deliberately separate from the state-vector kernels.
void dense_apply(cplx* data, uint64_t stride, unsigned n, const GateMatrix& m,
                 std::span<const unsigned> qubits, bool conjugate) {
  const unsigned k = m.num_qubits;
  const uint64_t side = one_bit(k);
  std::vector<unsigned> sorted(qubits.begin(), qubits.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<uint64_t> offsets(side);
  for (uint64_t l = 0; l < side; ++l) offsets[l] = scatter_bits(l, qubits);
  std::vector<cplx> in(side);
  const uint64_t groups = one_bit(n - k);
  for (uint64_t g = 0; g < groups; ++g) {
    const uint64_t base = expand_index(g, sorted);
    for (uint64_t l = 0; l < side; ++l) in[l] = data[(base + offsets[l]) * stride];
    for (uint64_t r = 0; r < side; ++r) {
      cplx acc = 0;
      for (uint64_t c = 0; c < side; ++c) {
        const cplx e = m.entries[r * side + c];
        acc += (conjugate ? std::conj(e) : e) * in[c];
      }
      data[(base + offsets[r]) * stride] = acc;
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(unsigned n) : n_(n) {
  if (n < 1 || n > 10) {
    throw CapacityError("density evolution supports 1..10 qubits");
  }
  data_.assign(dim() * dim(), cplx{});
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_entries(unsigned n, std::vector<cplx> entries) {
  DensityMatrix rho(n);
  if (entries.size() != rho.data_.size()) throw std::invalid_argument("entry count mismatch");
  rho.data_ = std::move(entries);
  return rho;
}

void DensityMatrix::conjugate_by(const GateMatrix& m, std::span<const unsigned> qubits) {
  const uint64_t d = dim();
  // rho := M rho (columns transform over the row index)...
  for (uint64_t c = 0; c < d; ++c) dense_apply(data_.data() + c, d, n_, m, qubits, false);
  // ...then rho := rho M† (each row transforms by conj(M)).
  for (uint64_t r = 0; r < d; ++r) dense_apply(data_.data() + r * d, 1, n_, m, qubits, true);
}

void DensityMatrix::evolve_unitary(const GateMatrix& m, std::span<const unsigned> qubits) {
  conjugate_by(m, qubits);
}

void DensityMatrix::evolve_pauli(const PauliError& channel, std::span<const unsigned> qubits) {
  const uint64_t d = dim();
  std::vector<cplx> out(d * d, cplx{});
  for (size_t t = 0; t < channel.terms.size(); ++t) {
    const double p = channel.term_prob(t);
    const PauliMasks masks = pauli_to_masks(channel.terms[t].pauli.rebased(qubits));
    // P rho P† entrywise: phase(r) * conj(phase(c)) * rho[r^x, c^x].
    auto phase = [&masks](uint64_t idx) {
      cplx ph;
      switch (masks.num_y & 3u) {
        case 0: ph = {1.0, 0.0}; break;
        case 1: ph = {0.0, -1.0}; break;
        case 2: ph = {-1.0, 0.0}; break;
        default: ph = {0.0, 1.0}; break;
      }
      return parity(idx & masks.z_mask) ? -ph : ph;
    };
    for (uint64_t r = 0; r < d; ++r) {
      for (uint64_t c = 0; c < d; ++c) {
        out[r * d + c] += p * phase(r) * std::conj(phase(c)) *
                          data_[(r ^ masks.x_mask) * d + (c ^ masks.x_mask)];
      }
    }
  }
  data_ = std::move(out);
}

void DensityMatrix::evolve_kraus(const KrausError& channel, std::span<const unsigned> qubits) {
  const std::vector<cplx> before = data_;
  std::vector<cplx> out(data_.size(), cplx{});
  for (const GateMatrix& m : channel.matrices) {
    data_ = before;
    conjugate_by(m, qubits);
    for (size_t i = 0; i < out.size(); ++i) out[i] += data_[i];
  }
  data_ = std::move(out);
}

void DensityMatrix::evolve_channel(const ErrorChannel& channel, std::span<const unsigned> qubits) {
  if (const auto* pauli = std::get_if<PauliError>(&channel)) {
    evolve_pauli(*pauli, qubits);
  } else {
    evolve_kraus(std::get<KrausError>(channel), qubits);
  }
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (uint64_t j = 0; j < dim(); ++j) t += data_[j * dim() + j].real();
  return t;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (uint64_t r = 0; r < dim(); ++r) {
    for (uint64_t c = 0; c <= r; ++c) {
      worst = std::max(worst, std::abs(data_[r * dim() + c] - std::conj(data_[c * dim() + r])));
    }
  }
  return worst;
}

std::vector<double> DensityMatrix::diagonal_marginal(std::span<const unsigned> qubits) const {
  std::vector<double> out(one_bit(static_cast<unsigned>(qubits.size())), 0.0);
  for (uint64_t j = 0; j < dim(); ++j) {
    out[gather_bits(j, qubits)] += data_[j * dim() + j].real();
  }
  return out;
}

namespace {

struct Trajectory {
  DensityMatrix rho;
  uint64_t creg = 0;
  double weight = 1.0;
};

// Walks the program up to (not including) the trailing measure run,
// branching at intermediate measurements.
std::vector<Trajectory> evolve_trajectories(const NoisyCircuit& program) {
  std::vector<Trajectory> trajs;
  trajs.push_back({DensityMatrix(program.num_qubits), 0, 1.0});
  unsigned intermediate_measures = 0;

  for (size_t i = 0; i < program.terminal_measure_begin; ++i) {
    const ProgramOp& op = program.ops[i];
    switch (op.kind) {
      case ProgramOp::Kind::Barrier:
        break;
      case ProgramOp::Kind::Gate:
        for (Trajectory& t : trajs) {
          if (op.condition && !op.condition->holds(t.creg)) continue;
          t.rho.evolve_unitary(op.matrix, op.qubits);
        }
        break;
      case ProgramOp::Kind::PauliSite: {
        // Rebuild the channel from the site's cumulative terms and masks.
        for (Trajectory& t : trajs) {
          if (op.condition && !op.condition->holds(t.creg)) continue;
          const uint64_t d = t.rho.dim();
          std::vector<cplx> out(d * d, cplx{});
          double prev = 0.0;
          for (size_t term = 0; term < op.term_cum.size(); ++term) {
            const double p = op.term_cum[term] - prev;
            prev = op.term_cum[term];
            const PauliMasks& masks = op.term_masks[term];
            auto phase = [&masks](uint64_t idx) {
              cplx ph;
              switch (masks.num_y & 3u) {
                case 0: ph = {1.0, 0.0}; break;
                case 1: ph = {0.0, -1.0}; break;
                case 2: ph = {-1.0, 0.0}; break;
                default: ph = {0.0, 1.0}; break;
              }
              return parity(idx & masks.z_mask) ? -ph : ph;
            };
            for (uint64_t r = 0; r < d; ++r) {
              for (uint64_t c = 0; c < d; ++c) {
                out[r * d + c] += p * phase(r) * std::conj(phase(c)) *
                                  t.rho.at(r ^ masks.x_mask, c ^ masks.x_mask);
              }
            }
          }
          t.rho = DensityMatrix::from_entries(program.num_qubits, std::move(out));
        }
        break;
      }
      case ProgramOp::Kind::KrausSite:
        for (Trajectory& t : trajs) {
          if (op.condition && !op.condition->holds(t.creg)) continue;
          t.rho.evolve_kraus(program.kraus_channels[op.channel], op.qubits);
        }
        break;
      case ProgramOp::Kind::Reset: {
        // Measure-then-correct as a two-branch Kraus channel per reset.
        KrausError reset;
        reset.arity = static_cast<unsigned>(op.qubits.size());
        const uint64_t side = one_bit(reset.arity);
        for (uint64_t m = 0; m < side; ++m) {
          GateMatrix km{reset.arity, std::vector<cplx>(side * side, cplx{})};
          km.entries[0 * side + m] = 1.0;  // |0><m|
          reset.matrices.push_back(std::move(km));
        }
        for (Trajectory& t : trajs) {
          if (op.condition && !op.condition->holds(t.creg)) continue;
          t.rho.evolve_kraus(reset, op.qubits);
        }
        break;
      }
      case ProgramOp::Kind::Measure: {
        if (op.condition) {
          throw std::invalid_argument(
              "conditional intermediate measurement is unsupported in the exact evolver");
        }
        if (++intermediate_measures > 2) {
          throw CapacityError("exact evolver supports at most 2 intermediate measure sites");
        }
        std::vector<Trajectory> next;
        for (Trajectory& t : trajs) {
          const std::vector<double> probs = t.rho.diagonal_marginal(op.qubits);
          for (uint64_t m = 0; m < probs.size(); ++m) {
            if (probs[m] <= 0.0) continue;
            uint64_t qmask = 0;
            for (unsigned q : op.qubits) qmask |= one_bit(q);
            const uint64_t offset = scatter_bits(m, op.qubits);
            const uint64_t d = t.rho.dim();
            std::vector<cplx> proj(d * d, cplx{});
            for (uint64_t r = 0; r < d; ++r) {
              if ((r & qmask) != offset) continue;
              for (uint64_t c = 0; c < d; ++c) {
                if ((c & qmask) != offset) continue;
                proj[r * d + c] = t.rho.at(r, c) / probs[m];
              }
            }
            Trajectory child{DensityMatrix::from_entries(program.num_qubits, std::move(proj)),
                             t.creg, t.weight * probs[m]};
            for (size_t b = 0; b < op.clbits.size(); ++b) {
              const uint64_t bit = (m >> b) & 1;
              child.creg = (child.creg & ~one_bit(op.clbits[b])) | (bit << op.clbits[b]);
            }
            next.push_back(std::move(child));
          }
        }
        trajs = std::move(next);
        break;
      }
    }
  }
  return trajs;
}

}  // namespace

std::vector<double> exact_distribution(const NoisyCircuit& program,
                                       std::span<const unsigned> qubits) {
  const std::vector<Trajectory> trajs = evolve_trajectories(program);
  std::vector<double> out(one_bit(static_cast<unsigned>(qubits.size())), 0.0);
  for (const Trajectory& t : trajs) {
    const std::vector<double> marginal = t.rho.diagonal_marginal(qubits);
    for (size_t m = 0; m < marginal.size(); ++m) out[m] += t.weight * marginal[m];
  }
  return out;
}

std::map<uint64_t, double> exact_creg_distribution(const NoisyCircuit& program) {
  const std::vector<Trajectory> trajs = evolve_trajectories(program);
  std::map<uint64_t, double> out;
  const bool terminal = program.terminal_measure_begin < program.ops.size();
  for (const Trajectory& t : trajs) {
    if (!terminal) {
      out[t.creg] += t.weight;
      continue;
    }
    const std::vector<double> joint = t.rho.diagonal_marginal(program.sample_qubits);
    for (uint64_t m = 0; m < joint.size(); ++m) {
      if (joint[m] <= 0.0) continue;
      out[program.apply_sample_outcome(t.creg, m)] += t.weight * joint[m];
    }
  }
  return out;
}

double tvd_vs_exact(const Counts& counts, uint64_t shots,
                    const std::map<uint64_t, double>& exact) {
  std::map<uint64_t, double> empirical;
  for (const auto& [key, n] : counts) {
    const uint64_t v = key.empty() ? 0 : std::stoull(key, nullptr, 2);
    empirical[v] += static_cast<double>(n) / static_cast<double>(shots);
  }
  double l1 = 0.0;
  auto it_e = empirical.begin();
  auto it_x = exact.begin();
  while (it_e != empirical.end() || it_x != exact.end()) {
    if (it_x == exact.end() || (it_e != empirical.end() && it_e->first < it_x->first)) {
      l1 += std::abs(it_e->second);
      ++it_e;
    } else if (it_e == empirical.end() || it_x->first < it_e->first) {
      l1 += std::abs(it_x->second);
      ++it_x;
    } else {
      l1 += std::abs(it_e->second - it_x->second);
      ++it_e;
      ++it_x;
    }
  }
  return 0.5 * l1;
}

}  // namespace shotsim
