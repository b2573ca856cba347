// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
//
// AVX2 kernels. Complex doubles are [re, im] adjacent in memory, so one
// 256-bit register holds two amplitudes. Multi-bit x_mask Pauli strings and
// tiny arrays fall back to the scalar reference.
#include "shotsim/kernels.hpp"

namespace shotsim::detail {
const KernelTable* avx2_kernel_table_impl();
}

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>

namespace shotsim {

namespace {

// Lane-wise complex multiply: even lanes re, odd lanes im.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_sw, b_im));
}

inline __m256d broadcast_c(cplx c) {
  return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
}

inline __m256d pack2(cplx lo, cplx hi) {
  return _mm256_setr_pd(lo.real(), lo.imag(), hi.real(), hi.imag());
}

// (-i)^(num_y mod 4).
inline cplx pauli_phase(unsigned num_y) {
  switch (num_y & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

void apply_matrix1_avx2(cplx* a, uint64_t dim, unsigned target, const cplx* m) {
  if (dim < 4) {
    scalar_kernels().apply_matrix1(a, dim, target, m);
    return;
  }
  auto* p = reinterpret_cast<double*>(a);
  const __m256d m00 = broadcast_c(m[0]);
  const __m256d m01 = broadcast_c(m[1]);
  const __m256d m10 = broadcast_c(m[2]);
  const __m256d m11 = broadcast_c(m[3]);
  if (target == 0) {
    // Pair members are adjacent; split even/odd across two loads.
    for (uint64_t j = 0; j < dim; j += 4) {
      const __m256d va = _mm256_loadu_pd(p + 2 * j);
      const __m256d vb = _mm256_loadu_pd(p + 2 * j + 4);
      const __m256d v0 = _mm256_permute2f128_pd(va, vb, 0x20);
      const __m256d v1 = _mm256_permute2f128_pd(va, vb, 0x31);
      const __m256d r0 = _mm256_add_pd(cmul(v0, m00), cmul(v1, m01));
      const __m256d r1 = _mm256_add_pd(cmul(v0, m10), cmul(v1, m11));
      _mm256_storeu_pd(p + 2 * j, _mm256_permute2f128_pd(r0, r1, 0x20));
      _mm256_storeu_pd(p + 2 * j + 4, _mm256_permute2f128_pd(r0, r1, 0x31));
    }
    return;
  }
  const uint64_t stride = one_bit(target);
  for (uint64_t base = 0; base < dim; base += 2 * stride) {
    for (uint64_t j = 0; j < stride; j += 2) {
      const uint64_t i0 = base + j;
      const __m256d v0 = _mm256_loadu_pd(p + 2 * i0);
      const __m256d v1 = _mm256_loadu_pd(p + 2 * (i0 + stride));
      const __m256d r0 = _mm256_add_pd(cmul(v0, m00), cmul(v1, m01));
      const __m256d r1 = _mm256_add_pd(cmul(v0, m10), cmul(v1, m11));
      _mm256_storeu_pd(p + 2 * i0, r0);
      _mm256_storeu_pd(p + 2 * (i0 + stride), r1);
    }
  }
}

void apply_matrix2_avx2(cplx* a, uint64_t dim, unsigned q0, unsigned q1, const cplx* m) {
  const unsigned pl = q0 < q1 ? q0 : q1;
  if (dim < 8 || pl == 0) {
    scalar_kernels().apply_matrix2(a, dim, q0, q1, m);
    return;
  }
  auto* p = reinterpret_cast<double*>(a);
  __m256d mv[16];
  for (int k = 0; k < 16; ++k) mv[k] = broadcast_c(m[k]);
  const uint64_t d0 = one_bit(q0);
  const uint64_t d1 = one_bit(q1);
  const unsigned ph = q0 < q1 ? q1 : q0;
  const uint64_t ml = one_bit(pl) - 1;
  const uint64_t mh = one_bit(ph) - 1;
  // pl >= 1 keeps all four offsets on contiguous 2-amplitude runs.
  for (uint64_t i = 0; i < dim / 4; i += 2) {
    uint64_t base = ((i & ~ml) << 1) | (i & ml);
    base = ((base & ~mh) << 1) | (base & mh);
    const __m256d v0 = _mm256_loadu_pd(p + 2 * base);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * (base + d0));
    const __m256d v2 = _mm256_loadu_pd(p + 2 * (base + d1));
    const __m256d v3 = _mm256_loadu_pd(p + 2 * (base + d0 + d1));
    __m256d r0 = _mm256_add_pd(_mm256_add_pd(cmul(v0, mv[0]), cmul(v1, mv[1])),
                               _mm256_add_pd(cmul(v2, mv[2]), cmul(v3, mv[3])));
    __m256d r1 = _mm256_add_pd(_mm256_add_pd(cmul(v0, mv[4]), cmul(v1, mv[5])),
                               _mm256_add_pd(cmul(v2, mv[6]), cmul(v3, mv[7])));
    __m256d r2 = _mm256_add_pd(_mm256_add_pd(cmul(v0, mv[8]), cmul(v1, mv[9])),
                               _mm256_add_pd(cmul(v2, mv[10]), cmul(v3, mv[11])));
    __m256d r3 = _mm256_add_pd(_mm256_add_pd(cmul(v0, mv[12]), cmul(v1, mv[13])),
                               _mm256_add_pd(cmul(v2, mv[14]), cmul(v3, mv[15])));
    _mm256_storeu_pd(p + 2 * base, r0);
    _mm256_storeu_pd(p + 2 * (base + d0), r1);
    _mm256_storeu_pd(p + 2 * (base + d1), r2);
    _mm256_storeu_pd(p + 2 * (base + d0 + d1), r3);
  }
}

void apply_pauli_avx2(cplx* a, uint64_t dim, PauliMasks masks) {
  const bool single_x = masks.x_mask != 0 && (masks.x_mask & (masks.x_mask - 1)) == 0;
  if (dim < 4 || (masks.x_mask != 0 && !single_x)) {
    scalar_kernels().apply_pauli(a, dim, masks);
    return;
  }
  auto* p = reinterpret_cast<double*>(a);
  const cplx phase = pauli_phase(masks.num_y);
  // Multipliers indexed by the z-parity of the two packed elements.
  __m256d mv[2][2];
  mv[0][0] = pack2(phase, phase);
  mv[0][1] = pack2(phase, -phase);
  mv[1][0] = pack2(-phase, phase);
  mv[1][1] = pack2(-phase, -phase);
  const uint64_t z = masks.z_mask;

  if (masks.x_mask == 0) {
    for (uint64_t j = 0; j < dim; j += 2) {
      const int s0 = parity(j & z);
      const int s1 = parity((j + 1) & z);
      const __m256d v = _mm256_loadu_pd(p + 2 * j);
      _mm256_storeu_pd(p + 2 * j, cmul(v, mv[s0][s1]));
    }
    return;
  }

  const uint64_t stride = masks.x_mask;
  const int zflip = parity(masks.x_mask & z);
  if (masks.x_max == 0) {
    for (uint64_t j = 0; j < dim; j += 4) {
      const __m256d va = _mm256_loadu_pd(p + 2 * j);
      const __m256d vb = _mm256_loadu_pd(p + 2 * j + 4);
      const __m256d v0 = _mm256_permute2f128_pd(va, vb, 0x20);  // indices j, j+2
      const __m256d v1 = _mm256_permute2f128_pd(va, vb, 0x31);  // indices j+1, j+3
      const int s0 = parity(j & z);
      const int s2 = parity((j + 2) & z);
      const __m256d r0 = cmul(v1, mv[s0][s2]);
      const __m256d r1 = cmul(v0, mv[s0 ^ zflip][s2 ^ zflip]);
      _mm256_storeu_pd(p + 2 * j, _mm256_permute2f128_pd(r0, r1, 0x20));
      _mm256_storeu_pd(p + 2 * j + 4, _mm256_permute2f128_pd(r0, r1, 0x31));
    }
    return;
  }

  for (uint64_t base = 0; base < dim; base += 2 * stride) {
    for (uint64_t j = 0; j < stride; j += 2) {
      const uint64_t i0 = base + j;
      const int s0 = parity(i0 & z);
      const int s1 = parity((i0 + 1) & z);
      const __m256d v0 = _mm256_loadu_pd(p + 2 * i0);
      const __m256d v1 = _mm256_loadu_pd(p + 2 * (i0 + stride));
      _mm256_storeu_pd(p + 2 * i0, cmul(v1, mv[s0][s1]));
      _mm256_storeu_pd(p + 2 * (i0 + stride), cmul(v0, mv[s0 ^ zflip][s1 ^ zflip]));
    }
  }
}

constexpr uint64_t kSumBlock = 512;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

double norm_block(const double* p, uint64_t count2 /* doubles */) {
  __m256d acc = _mm256_setzero_pd();
  uint64_t i = 0;
  for (; i + 4 <= count2; i += 4) {
    const __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double s = hsum(acc);
  for (; i < count2; ++i) s += p[i] * p[i];
  return s;
}

double norm_sq_avx2(const cplx* a, uint64_t count) {
  const auto* p = reinterpret_cast<const double*>(a);
  if (count <= kSumBlock) return norm_block(p, 2 * count);
  std::vector<double> partials;
  partials.reserve((count + kSumBlock - 1) / kSumBlock);
  for (uint64_t i = 0; i < count; i += kSumBlock) {
    const uint64_t len = std::min(kSumBlock, count - i);
    partials.push_back(norm_block(p + 2 * i, 2 * len));
  }
  return pairwise_sum(partials);
}

double expval_matrix1_avx2(const cplx* a, uint64_t dim, unsigned target, const cplx* m) {
  if (dim < 4 || target == 0) {
    return scalar_kernels().expval_matrix1(a, dim, target, m);
  }
  const auto* p = reinterpret_cast<const double*>(a);
  const __m256d m00 = broadcast_c(m[0]);
  const __m256d m01 = broadcast_c(m[1]);
  const __m256d m10 = broadcast_c(m[2]);
  const __m256d m11 = broadcast_c(m[3]);
  const uint64_t stride = one_bit(target);
  std::vector<double> partials;
  for (uint64_t base = 0; base < dim; base += 2 * stride) {
    __m256d acc = _mm256_setzero_pd();
    for (uint64_t j = 0; j < stride; j += 2) {
      const uint64_t i0 = base + j;
      const __m256d v0 = _mm256_loadu_pd(p + 2 * i0);
      const __m256d v1 = _mm256_loadu_pd(p + 2 * (i0 + stride));
      const __m256d r0 = _mm256_add_pd(cmul(v0, m00), cmul(v1, m01));
      const __m256d r1 = _mm256_add_pd(cmul(v0, m10), cmul(v1, m11));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(r0, r0));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(r1, r1));
    }
    partials.push_back(hsum(acc));
  }
  return pairwise_sum(partials);
}

void scale_avx2(cplx* a, uint64_t count, double factor) {
  auto* p = reinterpret_cast<double*>(a);
  const __m256d f = _mm256_set1_pd(factor);
  uint64_t i = 0;
  for (; i + 2 <= count; i += 2) {
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), f));
  }
  for (; i < count; ++i) a[i] *= factor;
}

const KernelTable kAvx2Table = {
    "avx2",           apply_matrix1_avx2, apply_matrix2_avx2,
    apply_pauli_avx2, norm_sq_avx2,       expval_matrix1_avx2,
    scale_avx2,
};

}  // namespace

}  // namespace shotsim

const shotsim::KernelTable* shotsim::detail::avx2_kernel_table_impl() {
  return &shotsim::kAvx2Table;
}

#else

const shotsim::KernelTable* shotsim::detail::avx2_kernel_table_impl() {
  return nullptr;
}

#endif  // __AVX2__
