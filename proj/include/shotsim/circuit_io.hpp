// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "shotsim/circuit.hpp"

namespace shotsim {

// Line-oriented circuit text. Header lines declare register sizes, then one
// instruction per line:
//
//   qubits 2
//   clbits 2
//   h q1
//   cp q0,q1 1.5707963267948966
//   measure q0 -> c0
//   x q1 if 1==1
//
// Parameters print with 17 significant digits, so text round-trips are
// lossless. '#' starts a comment.
std::string circuit_to_text(const Circuit& circuit);
Circuit circuit_from_text(const std::string& text);

/// JSON mirror of the instruction fields; round-trips losslessly.
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);

/// Loads a circuit file, dispatching on a leading '{' to JSON.
Circuit load_circuit(const std::string& path);

}  // namespace shotsim
