// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
//
// Reference kernels. Every other implementation (AVX2) is tested against
// these; keep them simple and obviously correct.
#include "shotsim/kernels.hpp"

#include <algorithm>

namespace shotsim {

namespace {

// (-i)^(num_y mod 4): 0 -> 1, 1 -> -i, 2 -> -1, 3 -> i.
inline cplx pauli_phase(unsigned num_y) {
  switch (num_y & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

void apply_matrix1_scalar(cplx* a, uint64_t dim, unsigned target, const cplx* m) {
  const uint64_t mask = one_bit(target);
  const uint64_t lo = mask - 1;
  for (uint64_t i = 0; i < dim / 2; ++i) {
    const uint64_t i0 = ((i & ~lo) << 1) | (i & lo);
    const uint64_t i1 = i0 | mask;
    const cplx v0 = a[i0];
    const cplx v1 = a[i1];
    a[i0] = m[0] * v0 + m[1] * v1;
    a[i1] = m[2] * v0 + m[3] * v1;
  }
}

void apply_matrix2_scalar(cplx* a, uint64_t dim, unsigned q0, unsigned q1, const cplx* m) {
  const uint64_t d0 = one_bit(q0);
  const uint64_t d1 = one_bit(q1);
  const unsigned pl = q0 < q1 ? q0 : q1;
  const unsigned ph = q0 < q1 ? q1 : q0;
  const uint64_t ml = one_bit(pl) - 1;
  const uint64_t mh = one_bit(ph) - 1;
  for (uint64_t i = 0; i < dim / 4; ++i) {
    uint64_t base = ((i & ~ml) << 1) | (i & ml);
    base = ((base & ~mh) << 1) | (base & mh);
    const cplx v0 = a[base];
    const cplx v1 = a[base + d0];
    const cplx v2 = a[base + d1];
    const cplx v3 = a[base + d0 + d1];
    a[base] = m[0] * v0 + m[1] * v1 + m[2] * v2 + m[3] * v3;
    a[base + d0] = m[4] * v0 + m[5] * v1 + m[6] * v2 + m[7] * v3;
    a[base + d1] = m[8] * v0 + m[9] * v1 + m[10] * v2 + m[11] * v3;
    a[base + d0 + d1] = m[12] * v0 + m[13] * v1 + m[14] * v2 + m[15] * v3;
  }
}

void apply_pauli_scalar(cplx* a, uint64_t dim, PauliMasks masks) {
  const cplx phase = pauli_phase(masks.num_y);
  if (masks.x_mask == 0) {
    for (uint64_t j = 0; j < dim; ++j) {
      cplx v = phase * a[j];
      if (parity(j & masks.z_mask)) v = -v;
      a[j] = v;
    }
    return;
  }
  const uint64_t mask_l = one_bit(masks.x_max) - 1;
  const uint64_t mask_u = ~((one_bit(masks.x_max) << 1) - 1);
  for (uint64_t i = 0; i < dim / 2; ++i) {
    const uint64_t i0 = ((i << 1) & mask_u) | (i & mask_l);
    const uint64_t i1 = i0 ^ masks.x_mask;
    // Swap then sign by the destination index, matching the mask form.
    cplx t0 = phase * a[i1];
    cplx t1 = phase * a[i0];
    if (parity(i0 & masks.z_mask)) t0 = -t0;
    if (parity(i1 & masks.z_mask)) t1 = -t1;
    a[i0] = t0;
    a[i1] = t1;
  }
}

double norm_sq_block(const cplx* a, uint64_t count) {
  double s = 0.0;
  for (uint64_t i = 0; i < count; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

constexpr uint64_t kSumBlock = 512;

double norm_sq_scalar(const cplx* a, uint64_t count) {
  if (count <= kSumBlock) return norm_sq_block(a, count);
  std::vector<double> partials;
  partials.reserve((count + kSumBlock - 1) / kSumBlock);
  for (uint64_t i = 0; i < count; i += kSumBlock) {
    partials.push_back(norm_sq_block(a + i, std::min(kSumBlock, count - i)));
  }
  return pairwise_sum(partials);
}

double expval_matrix1_scalar(const cplx* a, uint64_t dim, unsigned target, const cplx* m) {
  const uint64_t mask = one_bit(target);
  const uint64_t lo = mask - 1;
  const uint64_t pairs = dim / 2;
  auto block = [&](uint64_t begin, uint64_t end) {
    double s = 0.0;
    for (uint64_t i = begin; i < end; ++i) {
      const uint64_t i0 = ((i & ~lo) << 1) | (i & lo);
      const uint64_t i1 = i0 | mask;
      const cplx r0 = m[0] * a[i0] + m[1] * a[i1];
      const cplx r1 = m[2] * a[i0] + m[3] * a[i1];
      s += r0.real() * r0.real() + r0.imag() * r0.imag();
      s += r1.real() * r1.real() + r1.imag() * r1.imag();
    }
    return s;
  };
  if (pairs <= kSumBlock) return block(0, pairs);
  std::vector<double> partials;
  partials.reserve((pairs + kSumBlock - 1) / kSumBlock);
  for (uint64_t i = 0; i < pairs; i += kSumBlock) {
    partials.push_back(block(i, std::min(i + kSumBlock, pairs)));
  }
  return pairwise_sum(partials);
}

void scale_scalar(cplx* a, uint64_t count, double factor) {
  for (uint64_t i = 0; i < count; ++i) a[i] *= factor;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table = {
      "scalar",          apply_matrix1_scalar, apply_matrix2_scalar,
      apply_pauli_scalar, norm_sq_scalar,      expval_matrix1_scalar,
      scale_scalar,
  };
  return table;
}

}  // namespace shotsim
