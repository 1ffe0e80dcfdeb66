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

// AArch64 Advanced SIMD variant, two doubles per register. Separate
// multiply and add (no vfma) to track the scalar reference.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>

#include "kernels_internal.hpp"

namespace nvsense::kernels::neon {

namespace {

inline float64x2_t poly6(float64x2_t zz, const double *coef) {
  float64x2_t p = vdupq_n_f64(coef[0]);
  for (int k = 1; k < 6; ++k)
    p = vaddq_f64(vmulq_f64(p, zz), vdupq_n_f64(coef[k]));
  return p;
}

inline float64x2_t flip(float64x2_t v, uint64x2_t mask) {
  const uint64x2_t sign = vdupq_n_u64(0x8000000000000000ULL);
  return vreinterpretq_f64_u64(
      veorq_u64(vreinterpretq_u64_f64(v), vandq_u64(mask, sign)));
}

inline void sincos2(float64x2_t x, float64x2_t *s_out, float64x2_t *c_out) {
  using namespace cephes;
  const float64x2_t one = vdupq_n_f64(1.0);
  uint64x2_t neg = vcltq_f64(x, vdupq_n_f64(0.0));
  x = vabsq_f64(x);

  float64x2_t y = vrndmq_f64(vmulq_f64(x, vdupq_n_f64(kFourOverPi)));
  float64x2_t half_y = vrndmq_f64(vmulq_f64(y, vdupq_n_f64(0.5)));
  uint64x2_t even = vceqq_f64(vsubq_f64(y, vaddq_f64(half_y, half_y)),
                              vdupq_n_f64(0.0));
  y = vbslq_f64(even, y, vaddq_f64(y, one));

  float64x2_t y8 = vrndmq_f64(vmulq_f64(y, vdupq_n_f64(0.125)));
  float64x2_t j = vsubq_f64(y, vmulq_f64(y8, vdupq_n_f64(8.0)));
  uint64x2_t upper = vcgtq_f64(j, vdupq_n_f64(3.0));
  j = vbslq_f64(upper, vsubq_f64(j, vdupq_n_f64(4.0)), j);
  uint64x2_t sign_s = veorq_u64(neg, upper);
  uint64x2_t sign_c = veorq_u64(upper, vcgtq_f64(j, one));

  float64x2_t z = vsubq_f64(x, vmulq_f64(y, vdupq_n_f64(kDP1)));
  z = vsubq_f64(z, vmulq_f64(y, vdupq_n_f64(kDP2)));
  z = vsubq_f64(z, vmulq_f64(y, vdupq_n_f64(kDP3)));
  float64x2_t zz = vmulq_f64(z, z);

  float64x2_t sin_poly = vaddq_f64(z, vmulq_f64(vmulq_f64(z, zz), poly6(zz, kSin)));
  float64x2_t cos_poly =
      vaddq_f64(vsubq_f64(one, vmulq_f64(vdupq_n_f64(0.5), zz)),
                vmulq_f64(vmulq_f64(zz, zz), poly6(zz, kCos)));
  uint64x2_t swap =
      vorrq_u64(vceqq_f64(j, one), vceqq_f64(j, vdupq_n_f64(2.0)));
  *s_out = flip(vbslq_f64(swap, cos_poly, sin_poly), sign_s);
  *c_out = flip(vbslq_f64(swap, sin_poly, cos_poly), sign_c);
}

void sincos(const double *x, double *s, double *c, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t vs, vc;
    sincos2(vld1q_f64(x + k), &vs, &vc);
    vst1q_f64(s + k, vs);
    vst1q_f64(c + k, vc);
  }
  if (k < n) scalar::kTable.sincos(x + k, s + k, c + k, n - k);
}

void modulate(const double *a, const double *s, const double *c, double *i,
              double *q, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t va = vld1q_f64(a + k);
    vst1q_f64(i + k, vmulq_f64(va, vld1q_f64(c + k)));
    vst1q_f64(q + k, vmulq_f64(va, vld1q_f64(s + k)));
  }
  if (k < n) scalar::kTable.modulate(a + k, s + k, c + k, i + k, q + k, n - k);
}

void iq_mix(const double *i, const double *q, const double *c,
            const double *s, double *out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t a = vmulq_f64(vld1q_f64(i + k), vld1q_f64(c + k));
    float64x2_t b = vmulq_f64(vld1q_f64(q + k), vld1q_f64(s + k));
    vst1q_f64(out + k, vsubq_f64(a, b));
  }
  if (k < n) scalar::kTable.iq_mix(i + k, q + k, c + k, s + k, out + k, n - k);
}

void dot2(const double *x, const double *c, const double *s, std::size_t n,
          double *acc_c, double *acc_s) {
  float64x2_t vc = vdupq_n_f64(0.0);
  float64x2_t vs = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t vx = vld1q_f64(x + k);
    vc = vaddq_f64(vc, vmulq_f64(vx, vld1q_f64(c + k)));
    vs = vaddq_f64(vs, vmulq_f64(vx, vld1q_f64(s + k)));
  }
  double tc = 0.0, ts = 0.0;
  if (k < n) scalar::kTable.dot2(x + k, c + k, s + k, n - k, &tc, &ts);
  *acc_c = vaddvq_f64(vc) + tc;
  *acc_s = vaddvq_f64(vs) + ts;
}

double sum_sq_diff(const double *a, const double *b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t d = vsubq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double tail = k < n ? scalar::kTable.sum_sq_diff(a + k, b + k, n - k) : 0.0;
  return vaddvq_f64(acc) + tail;
}

void affine_envelope(const double *p, const double *env, double *out,
                     std::size_t n) {
  const float64x2_t half = vdupq_n_f64(0.5);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t d = vsubq_f64(vld1q_f64(p + k), half);
    vst1q_f64(out + k, vaddq_f64(half, vmulq_f64(d, vld1q_f64(env + k))));
  }
  if (k < n) scalar::kTable.affine_envelope(p + k, env + k, out + k, n - k);
}

}  // namespace

const KernelTable kTable = {Backend::kNeon, "neon", sincos, modulate,
                            iq_mix,         dot2,   sum_sq_diff,
                            affine_envelope};

}  // namespace nvsense::kernels::neon

#endif  // __aarch64__
