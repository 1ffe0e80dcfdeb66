// Copyright 2026 The nvsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <string>

#include "kernels_internal.hpp"
#include "nvsense/errors.hpp"

namespace nvsense::kernels {

namespace {

const KernelTable *detect() {
#if defined(NVSENSE_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return &avx2::kTable;
#endif
#if defined(NVSENSE_HAVE_NEON)
  return &neon::kTable;
#endif
  return &scalar::kTable;
}

const KernelTable *automatic() {
  static const KernelTable *table = detect();
  return table;
}

std::atomic<const KernelTable *> g_forced{nullptr};

}  // namespace

const KernelTable &active() {
  const KernelTable *forced = g_forced.load(std::memory_order_acquire);
  return forced ? *forced : *automatic();
}

const KernelTable &scalar_table() { return scalar::kTable; }

const KernelTable *table_for(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &scalar::kTable;
    case Backend::kAvx2:
#if defined(NVSENSE_HAVE_AVX2)
      __builtin_cpu_init();
      if (__builtin_cpu_supports("avx2")) return &avx2::kTable;
#endif
      return nullptr;
    case Backend::kNeon:
#if defined(NVSENSE_HAVE_NEON)
      return &neon::kTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

void force_backend(Backend backend) {
  const KernelTable *t = table_for(backend);
  if (!t)
    throw DomainError(std::string("kernel backend unavailable: ") +
                      backend_name(backend));
  g_forced.store(t, std::memory_order_release);
}

void reset_backend() { g_forced.store(nullptr, std::memory_order_release); }

const char *backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

}  // namespace nvsense::kernels
