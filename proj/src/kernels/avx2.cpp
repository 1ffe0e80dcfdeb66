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

// Compiled with -mavx2 only. Arithmetic mirrors scalar.cpp operation for
// operation (no FMA contraction) so elementwise kernels agree bit for bit.

#include <immintrin.h>

#include <cstddef>

#include "kernels_internal.hpp"

namespace nvsense::kernels::avx2 {

namespace {

inline __m256d poly6(__m256d zz, const double *coef) {
  __m256d p = _mm256_set1_pd(coef[0]);
  for (int k = 1; k < 6; ++k)
    p = _mm256_add_pd(_mm256_mul_pd(p, zz), _mm256_set1_pd(coef[k]));
  return p;
}

inline void sincos4(__m256d x, __m256d *s_out, __m256d *c_out) {
  using namespace cephes;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d neg_zero = _mm256_set1_pd(-0.0);

  // Sign of sin follows the sign of x.
  __m256d sign_s = _mm256_and_pd(x, neg_zero);
  x = _mm256_andnot_pd(neg_zero, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(x, _mm256_set1_pd(kFourOverPi)));
  // Round odd octant indices up to the next even one.
  __m256d half_y = _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.5)));
  __m256d odd = _mm256_cmp_pd(_mm256_sub_pd(y, _mm256_add_pd(half_y, half_y)),
                              zero, _CMP_NEQ_OQ);
  y = _mm256_add_pd(y, _mm256_and_pd(odd, one));

  // j = y mod 8.
  __m256d y8 = _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125)));
  __m256d j = _mm256_sub_pd(y, _mm256_mul_pd(y8, _mm256_set1_pd(8.0)));

  __m256d upper = _mm256_cmp_pd(j, _mm256_set1_pd(3.0), _CMP_GT_OQ);
  j = _mm256_sub_pd(j, _mm256_and_pd(upper, _mm256_set1_pd(4.0)));
  sign_s = _mm256_xor_pd(sign_s, _mm256_and_pd(upper, neg_zero));
  __m256d sign_c = _mm256_and_pd(upper, neg_zero);
  __m256d over1 = _mm256_cmp_pd(j, one, _CMP_GT_OQ);
  sign_c = _mm256_xor_pd(sign_c, _mm256_and_pd(over1, neg_zero));

  __m256d z = _mm256_sub_pd(x, _mm256_mul_pd(y, _mm256_set1_pd(kDP1)));
  z = _mm256_sub_pd(z, _mm256_mul_pd(y, _mm256_set1_pd(kDP2)));
  z = _mm256_sub_pd(z, _mm256_mul_pd(y, _mm256_set1_pd(kDP3)));
  __m256d zz = _mm256_mul_pd(z, z);

  __m256d sin_poly =
      _mm256_add_pd(z, _mm256_mul_pd(_mm256_mul_pd(z, zz), poly6(zz, kSin)));
  __m256d cos_poly = _mm256_add_pd(
      _mm256_sub_pd(one, _mm256_mul_pd(_mm256_set1_pd(0.5), zz)),
      _mm256_mul_pd(_mm256_mul_pd(zz, zz), poly6(zz, kCos)));

  // Octants 1 and 2 swap the polynomials.
  __m256d swap = _mm256_or_pd(_mm256_cmp_pd(j, one, _CMP_EQ_OQ),
                              _mm256_cmp_pd(j, _mm256_set1_pd(2.0), _CMP_EQ_OQ));
  __m256d s = _mm256_blendv_pd(sin_poly, cos_poly, swap);
  __m256d c = _mm256_blendv_pd(cos_poly, sin_poly, swap);
  *s_out = _mm256_xor_pd(s, sign_s);
  *c_out = _mm256_xor_pd(c, sign_c);
}

void sincos(const double *x, double *s, double *c, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x + k), &vs, &vc);
    _mm256_storeu_pd(s + k, vs);
    _mm256_storeu_pd(c + k, vc);
  }
  if (k < n) scalar::kTable.sincos(x + k, s + k, c + k, n - k);
}

void modulate(const double *a, const double *s, const double *c, double *i,
              double *q, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d va = _mm256_loadu_pd(a + k);
    _mm256_storeu_pd(i + k, _mm256_mul_pd(va, _mm256_loadu_pd(c + k)));
    _mm256_storeu_pd(q + k, _mm256_mul_pd(va, _mm256_loadu_pd(s + k)));
  }
  if (k < n) scalar::kTable.modulate(a + k, s + k, c + k, i + k, q + k, n - k);
}

void iq_mix(const double *i, const double *q, const double *c,
            const double *s, double *out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d a = _mm256_mul_pd(_mm256_loadu_pd(i + k), _mm256_loadu_pd(c + k));
    __m256d b = _mm256_mul_pd(_mm256_loadu_pd(q + k), _mm256_loadu_pd(s + k));
    _mm256_storeu_pd(out + k, _mm256_sub_pd(a, b));
  }
  if (k < n) scalar::kTable.iq_mix(i + k, q + k, c + k, s + k, out + k, n - k);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void dot2(const double *x, const double *c, const double *s, std::size_t n,
          double *acc_c, double *acc_s) {
  __m256d vc = _mm256_setzero_pd();
  __m256d vs = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d vx = _mm256_loadu_pd(x + k);
    vc = _mm256_add_pd(vc, _mm256_mul_pd(vx, _mm256_loadu_pd(c + k)));
    vs = _mm256_add_pd(vs, _mm256_mul_pd(vx, _mm256_loadu_pd(s + k)));
  }
  double tc = 0.0, ts = 0.0;
  if (k < n) scalar::kTable.dot2(x + k, c + k, s + k, n - k, &tc, &ts);
  *acc_c = hsum(vc) + tc;
  *acc_s = hsum(vs) + ts;
}

double sum_sq_diff(const double *a, const double *b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double tail = k < n ? scalar::kTable.sum_sq_diff(a + k, b + k, n - k) : 0.0;
  return hsum(acc) + tail;
}

void affine_envelope(const double *p, const double *env, double *out,
                     std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + k), half);
    _mm256_storeu_pd(out + k,
                     _mm256_add_pd(half, _mm256_mul_pd(d, _mm256_loadu_pd(env + k))));
  }
  if (k < n) scalar::kTable.affine_envelope(p + k, env + k, out + k, n - k);
}

}  // namespace

const KernelTable kTable = {Backend::kAvx2, "avx2", sincos, modulate,
                            iq_mix,         dot2,   sum_sq_diff,
                            affine_envelope};

}  // namespace nvsense::kernels::avx2
