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

#include <cmath>
#include <cstddef>

#include "kernels_internal.hpp"

namespace nvsense::kernels::scalar {

namespace {

// Cephes sin/cos: octant reduction with pi/4 split into three parts, then
// degree-13/14 minimax polynomials on [-pi/4, pi/4].
inline void sincos1(double x, double *s, double *c) {
  using namespace cephes;
  int sign_s = 1;
  if (x < 0) {
    x = -x;
    sign_s = -1;
  }
  double y = std::floor(x * kFourOverPi);
  long long j = static_cast<long long>(y);
  if (j & 1) {
    j += 1;
    y += 1.0;
  }
  j &= 7;
  int sign_c = 1;
  if (j > 3) {
    j -= 4;
    sign_s = -sign_s;
    sign_c = -sign_c;
  }
  if (j > 1) sign_c = -sign_c;
  const double z = ((x - y * kDP1) - y * kDP2) - y * kDP3;
  const double zz = z * z;
  double ps = kSin[0];
  for (int k = 1; k < 6; ++k) ps = ps * zz + kSin[k];
  double pc = kCos[0];
  for (int k = 1; k < 6; ++k) pc = pc * zz + kCos[k];
  const double sin_poly = z + z * zz * ps;
  const double cos_poly = 1.0 - 0.5 * zz + zz * zz * pc;
  if (j == 1 || j == 2) {
    *s = sign_s * cos_poly;
    *c = sign_c * sin_poly;
  } else {
    *s = sign_s * sin_poly;
    *c = sign_c * cos_poly;
  }
}

void sincos(const double *x, double *s, double *c, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) sincos1(x[k], s + k, c + k);
}

void modulate(const double *a, const double *s, const double *c, double *i,
              double *q, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    i[k] = a[k] * c[k];
    q[k] = a[k] * s[k];
  }
}

void iq_mix(const double *i, const double *q, const double *c,
            const double *s, double *out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = i[k] * c[k] - q[k] * s[k];
}

void dot2(const double *x, const double *c, const double *s, std::size_t n,
          double *acc_c, double *acc_s) {
  double sc = 0.0, ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sc += x[k] * c[k];
    ss += x[k] * s[k];
  }
  *acc_c = sc;
  *acc_s = ss;
}

double sum_sq_diff(const double *a, const double *b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

void affine_envelope(const double *p, const double *env, double *out,
                     std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = 0.5 + (p[k] - 0.5) * env[k];
}

}  // namespace

const KernelTable kTable = {Backend::kScalar, "scalar", sincos, modulate,
                            iq_mix,           dot2,     sum_sq_diff,
                            affine_envelope};

}  // namespace nvsense::kernels::scalar
