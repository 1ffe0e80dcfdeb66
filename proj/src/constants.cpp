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

#include "nvsense/constants.hpp"

#include "nvsense/errors.hpp"

namespace nvsense {

PhysicalConstants::PhysicalConstants(double planck_h, double mu0_over_4pi,
                                     double d_zfs_mhz,
                                     double gamma_e_mhz_per_mt,
                                     double gamma_c13_khz_per_mt,
                                     double gamma_h1_khz_per_mt)
    : planck_h_(planck_h),
      mu0_over_4pi_(mu0_over_4pi),
      d_zfs_mhz_(d_zfs_mhz),
      gamma_e_(gamma_e_mhz_per_mt),
      gamma_c13_(gamma_c13_khz_per_mt),
      gamma_h1_(gamma_h1_khz_per_mt) {
  if (!(planck_h > 0 && mu0_over_4pi > 0 && d_zfs_mhz > 0 &&
        gamma_e_mhz_per_mt > 0 && gamma_c13_khz_per_mt > 0 &&
        gamma_h1_khz_per_mt > 0))
    throw DomainError("physical constants must be strictly positive");
}

}  // namespace nvsense
