// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include "shotsim/common.hpp"

namespace shotsim {

// Tensor-product Pauli operator in bit-mask form. x_mask marks targets of
// X and Y, z_mask marks targets of Z and Y, num_y counts Y factors and
// x_max is the highest set bit of x_mask (meaningless when x_mask == 0).
struct PauliMasks {
  uint64_t x_mask = 0;
  uint64_t z_mask = 0;
  unsigned num_y = 0;
  unsigned x_max = 0;

  bool is_identity() const { return x_mask == 0 && z_mask == 0 && num_y == 0; }
};

// Inner-loop kernels over one amplitude array. Two interchangeable
// implementations exist: a scalar reference and an AVX2 variant; both are
// equivalence-tested against each other. One table is selected at startup
// (or via select_kernels) and used process-wide, so every executor sees
// identical floating-point behaviour.
struct KernelTable {
  const char* name;
  // 2x2 matrix (row-major, 4 entries) on one target qubit.
  void (*apply_matrix1)(cplx* amps, uint64_t dim, unsigned target, const cplx* m);
  // 4x4 matrix (row-major, 16 entries); q0 is the low axis of the matrix.
  void (*apply_matrix2)(cplx* amps, uint64_t dim, unsigned q0, unsigned q1, const cplx* m);
  // Fused Pauli application, destination-sign form (see apply_pauli_fused).
  void (*apply_pauli)(cplx* amps, uint64_t dim, PauliMasks masks);
  double (*norm_sq)(const cplx* amps, uint64_t count);
  // <psi|M†M|psi> for a 2x2 M on one target, without mutating amps.
  double (*expval_matrix1)(const cplx* amps, uint64_t dim, unsigned target, const cplx* m);
  void (*scale)(cplx* amps, uint64_t count, double factor);
};

const KernelTable& scalar_kernels();

// nullptr when AVX2 is unavailable (not compiled in or not supported by
// the running CPU).
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();

/// Select "scalar", "avx2" or "auto" (best available). Throws ConfigError
/// for unknown names or when avx2 is requested but unavailable.
void select_kernels(std::string_view which);

}  // namespace shotsim
