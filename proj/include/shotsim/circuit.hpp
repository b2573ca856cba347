// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shotsim/common.hpp"

namespace shotsim {

// Gate vocabulary. Qubit 0 is the least-significant bit of amplitude
// indices throughout; a multi-qubit gate's qubits[0] is the low axis of
// its matrix.
enum class GateKind : uint8_t {
  ID, X, Y, Z, H, S, SDG, T, TDG, P, U, CX, CP, SWAP, MEASURE, RESET, BARRIER,
};

struct GateInfo {
  std::string_view name;
  unsigned arity;       // qubit operands
  unsigned num_params;  // real angle parameters
  bool unitary;         // has a matrix representation
};

const GateInfo& gate_info(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Applies an instruction only to shots whose classical register satisfies
/// (creg & clbit_mask) == value.
struct Condition {
  uint64_t clbit_mask = 0;
  uint64_t value = 0;

  bool holds(uint64_t creg) const { return (creg & clbit_mask) == value; }
  bool operator==(const Condition&) const = default;
};

struct Instruction {
  GateKind kind;
  std::vector<unsigned> qubits;
  std::vector<unsigned> clbits;  // MEASURE only
  std::vector<double> params;
  std::optional<Condition> condition;

  bool operator==(const Instruction&) const = default;
};

struct Circuit {
  unsigned num_qubits = 0;
  unsigned num_clbits = 0;
  std::vector<Instruction> instructions;

  bool operator==(const Circuit&) const = default;
};

struct Violation {
  size_t instruction;  // index into Circuit::instructions
  std::string message;
};

/// Every invariant violation with its instruction position; empty means ok.
std::vector<Violation> validate(const Circuit& circuit);

/// Throws std::invalid_argument listing the first violations when invalid.
void require_valid(const Circuit& circuit);

/// Standard quantum Fourier transform on n qubits (1 <= n <= 30):
/// for each target k from n-1 down to 0, H on k then CP(pi/2^(k-j)) from
/// every j < k onto k; trailing SWAPs reverse the qubit order.
Circuit qft_circuit(unsigned n);

/// Extends the circuit with num_qubits classical bits (if absent) and a
/// trailing MEASURE of qubit k into clbit k for every k.
Circuit measure_all(Circuit circuit);

// Row-major 2^k x 2^k matrix of a unitary gate kind.
struct GateMatrix {
  unsigned num_qubits = 0;
  std::vector<cplx> entries;

  uint64_t dim() const { return one_bit(num_qubits); }
  cplx at(uint64_t r, uint64_t c) const { return entries[r * dim() + c]; }
};

GateMatrix gate_matrix(GateKind kind, std::span<const double> params);

}  // namespace shotsim
