// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/program.hpp"

#include <algorithm>

namespace shotsim {

uint64_t NoisyCircuit::apply_sample_outcome(uint64_t creg, uint64_t outcome) const {
  for (const auto& [clbit, pos] : sample_writes) {
    const uint64_t bit = (outcome >> pos) & 1;
    creg = (creg & ~one_bit(clbit)) | (bit << clbit);
  }
  return creg;
}

NoisyCircuit instrument(const Circuit& circuit, const NoiseModel& model) {
  require_valid(circuit);
  NoisyCircuit program;
  program.num_qubits = circuit.num_qubits;
  program.num_clbits = circuit.num_clbits;

  std::vector<const ErrorChannel*> kraus_seen;
  for (const Instruction& ins : circuit.instructions) {
    const GateInfo& info = gate_info(ins.kind);
    ProgramOp op;
    op.qubits = ins.qubits;
    op.condition = ins.condition;
    switch (ins.kind) {
      case GateKind::BARRIER: op.kind = ProgramOp::Kind::Barrier; break;
      case GateKind::MEASURE:
        op.kind = ProgramOp::Kind::Measure;
        op.clbits = ins.clbits;
        program.has_measure = true;
        break;
      case GateKind::RESET: op.kind = ProgramOp::Kind::Reset; break;
      default:
        op.kind = ProgramOp::Kind::Gate;
        op.gate = ins.kind;
        op.params = ins.params;
        op.matrix = gate_matrix(ins.kind, ins.params);
        break;
    }
    program.ops.push_back(std::move(op));

    if (!info.unitary) continue;
    const ErrorChannel* channel = model.match(ins.kind, info.arity);
    if (channel == nullptr) continue;

    ProgramOp site;
    site.qubits = ins.qubits;
    site.condition = ins.condition;  // no gate applied means no noise either
    if (const auto* pauli = std::get_if<PauliError>(channel)) {
      site.kind = ProgramOp::Kind::PauliSite;
      site.term_cum.reserve(pauli->terms.size());
      site.term_masks.reserve(pauli->terms.size());
      site.term_identity.reserve(pauli->terms.size());
      for (const auto& term : pauli->terms) {
        site.term_cum.push_back(term.cumulative);
        const PauliString concrete = term.pauli.rebased(ins.qubits);
        site.term_masks.push_back(pauli_to_masks(concrete));
        site.term_identity.push_back(concrete.is_identity() ? 1 : 0);
      }
      ++program.pauli_sites;
    } else {
      site.kind = ProgramOp::Kind::KrausSite;
      auto found = std::find(kraus_seen.begin(), kraus_seen.end(), channel);
      if (found == kraus_seen.end()) {
        kraus_seen.push_back(channel);
        program.kraus_channels.push_back(std::get<KrausError>(*channel));
        found = std::prev(kraus_seen.end());
      }
      site.channel = static_cast<uint32_t>(found - kraus_seen.begin());
      ++program.kraus_sites;
    }
    program.ops.push_back(std::move(site));
  }

  for (ProgramOp& op : program.ops) {
    if (op.consumes_randomness()) op.event = program.num_events++;
  }

  // Trailing run of measure ops.
  size_t begin = program.ops.size();
  while (begin > 0 && program.ops[begin - 1].kind == ProgramOp::Kind::Measure) --begin;
  program.terminal_measure_begin = begin;

  if (program.has_measure) {
    uint64_t terminal_clbits = 0;
    for (size_t i = begin; i < program.ops.size(); ++i) {
      const ProgramOp& m = program.ops[i];
      for (size_t b = 0; b < m.qubits.size(); ++b) {
        const unsigned q = m.qubits[b];
        auto at = std::find(program.sample_qubits.begin(), program.sample_qubits.end(), q);
        if (at == program.sample_qubits.end()) {
          program.sample_qubits.push_back(q);
          at = std::prev(program.sample_qubits.end());
        }
        program.sample_writes.emplace_back(
            m.clbits[b], static_cast<unsigned>(at - program.sample_qubits.begin()));
        terminal_clbits |= one_bit(m.clbits[b]);
      }
    }

    bool eligible = true;
    // Only measures from the first measure onward.
    for (size_t i = 0; i < begin && eligible; ++i) {
      if (program.ops[i].kind == ProgramOp::Kind::Measure) eligible = false;
    }
    // Terminal measures themselves must be unconditional.
    for (size_t i = begin; i < program.ops.size() && eligible; ++i) {
      if (program.ops[i].condition) eligible = false;
    }
    // No condition anywhere may read the terminal clbits.
    for (const ProgramOp& op : program.ops) {
      if (!eligible) break;
      if (op.condition && (op.condition->clbit_mask & terminal_clbits)) eligible = false;
    }
    program.sampling_eligible = eligible;
  }
  return program;
}

}  // namespace shotsim
