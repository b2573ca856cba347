// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "shotsim/circuit.hpp"
#include "shotsim/noise.hpp"

namespace shotsim {

// One step of an instrumented program. Noise sites sit immediately after
// the instruction that triggered them and inherit its qubits and condition.
// Every randomness-consuming op (noise site, measure, reset) carries the
// event index that keys its uniform draws; the indices are a function of
// the program alone, so all executors see the same ones.
struct ProgramOp {
  enum class Kind : uint8_t { Gate, PauliSite, KrausSite, Measure, Reset, Barrier };

  Kind kind = Kind::Gate;
  GateKind gate = GateKind::ID;
  std::vector<unsigned> qubits;
  std::vector<unsigned> clbits;  // Measure only
  std::vector<double> params;
  std::optional<Condition> condition;
  GateMatrix matrix;       // Gate: precomputed unitary
  uint32_t channel = 0;    // KrausSite: index into NoisyCircuit::kraus_channels
  uint64_t event = 0;      // randomness-consuming ops

  // PauliSite: channel flattened against this site's qubits.
  std::vector<double> term_cum;
  std::vector<PauliMasks> term_masks;
  std::vector<uint8_t> term_identity;

  bool consumes_randomness() const {
    return kind == Kind::PauliSite || kind == Kind::KrausSite || kind == Kind::Measure ||
           kind == Kind::Reset;
  }
};

struct NoisyCircuit {
  unsigned num_qubits = 0;
  unsigned num_clbits = 0;
  std::vector<ProgramOp> ops;
  std::vector<KrausError> kraus_channels;

  uint64_t num_events = 0;       // randomness sites, numbered 0..num_events-1
  uint64_t pauli_sites = 0;
  uint64_t kraus_sites = 0;
  bool has_measure = false;

  // Terminal-measurement sampling: eligible when the program has measures,
  // everything from the first measure on is an unconditional measure, and
  // no condition anywhere reads the measured clbits. All executors then
  // draw each shot's outcome once, at the reserved event index, from the
  // final state's joint distribution over sample_qubits.
  bool sampling_eligible = false;
  size_t terminal_measure_begin = 0;       // ops index of the trailing measure run
  std::vector<unsigned> sample_qubits;     // distinct, first-occurrence order
  // (clbit, outcome bit position) pairs covering every terminal measure.
  std::vector<std::pair<unsigned, unsigned>> sample_writes;

  uint64_t sampling_event() const { return num_events; }
  uint64_t noise_sites() const { return pauli_sites + kraus_sites; }

  /// Register value with the terminal-sampling outcome written through the
  /// terminal measures' clbit maps.
  uint64_t apply_sample_outcome(uint64_t creg, uint64_t outcome) const;
};

/// Attaches the model's channels to the circuit: a noise site after every
/// instruction whose kind matches a rule (never MEASURE/RESET/BARRIER),
/// with event indices assigned in program order. Throws on invalid
/// circuits; arity mismatches between rules and gates raise ConfigError.
NoisyCircuit instrument(const Circuit& circuit, const NoiseModel& model);

}  // namespace shotsim
