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

#ifndef NVSENSE_KERNELS_HPP_
#define NVSENSE_KERNELS_HPP_

#include <cstddef>

// Hot inner loops with a scalar reference and vector variants. The active
// table is picked once from CPU features; tests may force a backend to
// compare variants against the scalar reference.
namespace nvsense::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  const char *name;

  // s[i] = sin(x[i]), c[i] = cos(x[i]). Accurate to a few ulp for
  // |x| <= 1e6; callers reduce phases to [-pi, pi) first.
  void (*sincos)(const double *x, double *s, double *c, std::size_t n);

  // i[k] = a[k] * c[k], q[k] = a[k] * s[k].
  void (*modulate)(const double *a, const double *s, const double *c,
                   double *i, double *q, std::size_t n);

  // out[k] = i[k] * c[k] - q[k] * s[k].
  void (*iq_mix)(const double *i, const double *q, const double *c,
                 const double *s, double *out, std::size_t n);

  // Accumulates sum x*c and sum x*s.
  void (*dot2)(const double *x, const double *c, const double *s,
               std::size_t n, double *acc_c, double *acc_s);

  // sum (a - b)^2.
  double (*sum_sq_diff)(const double *a, const double *b, std::size_t n);

  // out[k] = 0.5 + (p[k] - 0.5) * env[k].
  void (*affine_envelope)(const double *p, const double *env, double *out,
                          std::size_t n);
};

// Table used by the library. Chosen on first use.
const KernelTable &active();

// Always available.
const KernelTable &scalar_table();

// nullptr when the backend is not compiled in or the CPU lacks it.
const KernelTable *table_for(Backend backend);

// Pins active() to a backend. Throws DomainError if unavailable.
void force_backend(Backend backend);

// Returns active() to automatic selection.
void reset_backend();

const char *backend_name(Backend backend);

}  // namespace nvsense::kernels

#endif  // NVSENSE_KERNELS_HPP_
