// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "shotsim/exec.hpp"
#include "shotsim/statevector.hpp"

namespace shotsim {

// Single-shot primitives of the reference executor. The branch executor
// reuses the same decision arithmetic, so its per-shot outcomes match
// these bit for bit.

/// Scans the Kraus matrices in order, accumulating expectation values, and
/// applies the first matrix whose cumulative crosses u (scaled by
/// 1/sqrt(p)). Falls back to the last matrix when rounding slack leaves no
/// crossing. Early-exits after the application.
void apply_kraus_single(std::span<cplx> amps, const KrausError& kraus,
                        std::span<const unsigned> qubits, double u);

/// Inverse-CDF measurement of the listed qubits: collapses the state and
/// returns the outcome (qubits[0] = bit 0 of the outcome).
uint64_t measure_single(std::span<cplx> amps, std::span<const unsigned> qubits, double u);

/// Measure without recording, then X-correct every measured-1 qubit,
/// leaving the listed qubits in |0>. Returns the measured outcome.
uint64_t reset_single(std::span<cplx> amps, std::span<const unsigned> qubits, double u);

/// First site term with cumulative probability > u (strict); the final
/// cumulative is exactly 1 so a term always exists.
size_t pick_site_term(std::span<const double> cumulative, double u);

/// Runs one shot of the instrumented program on `state` (reset first) and
/// returns the shot's classical register.
uint64_t run_single_shot(const NoisyCircuit& program, uint64_t shot, uint64_t seed,
                         Amplitudes& state, bool check_norms = false);

}  // namespace shotsim
