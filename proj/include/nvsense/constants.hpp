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

#ifndef NVSENSE_CONSTANTS_HPP_
#define NVSENSE_CONSTANTS_HPP_

namespace nvsense {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Physical constants in the units the toolkit works in. Frequencies are
// never angular. Immutable once built; the constructor rejects
// non-positive entries.
class PhysicalConstants {
 public:
  constexpr PhysicalConstants() = default;
  PhysicalConstants(double planck_h, double mu0_over_4pi, double d_zfs_mhz,
                    double gamma_e_mhz_per_mt, double gamma_c13_khz_per_mt,
                    double gamma_h1_khz_per_mt);

  constexpr double planck_h() const { return planck_h_; }          // J s
  constexpr double mu0_over_4pi() const { return mu0_over_4pi_; }  // T m / A
  constexpr double d_zfs_mhz() const { return d_zfs_mhz_; }
  constexpr double gamma_e_mhz_per_mt() const { return gamma_e_; }
  constexpr double gamma_c13_khz_per_mt() const { return gamma_c13_; }
  constexpr double gamma_h1_khz_per_mt() const { return gamma_h1_; }

  // Same ratios expressed per tesla in Hz.
  constexpr double gamma_e_hz_per_t() const { return gamma_e_ * 1e9; }
  constexpr double gamma_h1_hz_per_t() const { return gamma_h1_ * 1e6; }

 private:
  double planck_h_ = 6.62607015e-34;
  double mu0_over_4pi_ = 1e-7;
  double d_zfs_mhz_ = 2870.0;
  double gamma_e_ = 28.0;
  double gamma_c13_ = 10.705;
  double gamma_h1_ = 42.577;
};

inline constexpr PhysicalConstants kConstants{};

}  // namespace nvsense

#endif  // NVSENSE_CONSTANTS_HPP_
