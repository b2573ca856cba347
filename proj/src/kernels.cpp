// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/kernels.hpp"

#include <atomic>
#include <string>

namespace shotsim {

namespace detail {
const KernelTable* avx2_kernel_table_impl();
}

const KernelTable* avx2_kernels() {
  static const KernelTable* table = [] {
    const KernelTable* t = detail::avx2_kernel_table_impl();
    if (t == nullptr) return t;
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    if (!__builtin_cpu_supports("avx2")) return static_cast<const KernelTable*>(nullptr);
#endif
    return t;
  }();
  return table;
}

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* pick_auto() {
  const KernelTable* avx = avx2_kernels();
  return avx != nullptr ? avx : &scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = pick_auto();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

void select_kernels(std::string_view which) {
  if (which == "auto") {
    g_active.store(pick_auto(), std::memory_order_release);
  } else if (which == "scalar") {
    g_active.store(&scalar_kernels(), std::memory_order_release);
  } else if (which == "avx2") {
    const KernelTable* avx = avx2_kernels();
    if (avx == nullptr) throw ConfigError("avx2 kernels are not available on this machine");
    g_active.store(avx, std::memory_order_release);
  } else {
    throw ConfigError("unknown kernel set: " + std::string(which));
  }
}

}  // namespace shotsim
