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

#ifndef NVSENSE_PHYSICS_HPP_
#define NVSENSE_PHYSICS_HPP_

#include <Eigen/Core>
#include <string>
#include <vector>

#include "nvsense/constants.hpp"

namespace nvsense {

enum class Species { kCarbon13, kProton, kCustom };

std::string species_name(Species s);
Species species_from_name(const std::string &name);  // throws DomainError

// Hyperfine components in kHz. The transverse component is a magnitude;
// its sign is absorbed into the choice of transverse axis.
class HyperfineCoupling {
 public:
  HyperfineCoupling() = default;
  HyperfineCoupling(double a_parallel_khz, double a_perpendicular_khz);

  double a_parallel_khz() const { return a_par_; }
  double a_perpendicular_khz() const { return a_perp_; }

 private:
  double a_par_ = 0.0;
  double a_perp_ = 0.0;
};

class NuclearSpin {
 public:
  // Known species take their ratio from kConstants.
  NuclearSpin(Species species, HyperfineCoupling coupling);
  // Known species must match the tabulated ratio (1e-9 relative); custom
  // species accept any positive ratio.
  NuclearSpin(Species species, double gamma_khz_per_mt,
              HyperfineCoupling coupling);

  Species species() const { return species_; }
  double gamma_khz_per_mt() const { return gamma_; }
  const HyperfineCoupling &coupling() const { return coupling_; }

 private:
  Species species_;
  double gamma_;
  HyperfineCoupling coupling_;
};

double tabulated_gamma_khz_per_mt(Species s);  // throws for kCustom

struct DetuningComponent {
  double detuning_mhz;
  double weight;
};

inline constexpr int kMaxNuclei = 5;

class SpinRegister {
 public:
  SpinRegister() = default;
  SpinRegister(double b0_mt, std::vector<NuclearSpin> nuclei,
               std::vector<DetuningComponent> nitrogen_mixture = {});

  double b0_mt() const { return b0_mt_; }
  const std::vector<NuclearSpin> &nuclei() const { return nuclei_; }
  // Empty means a single resonant component.
  const std::vector<DetuningComponent> &nitrogen_mixture() const {
    return mixture_;
  }

 private:
  double b0_mt_ = 0.0;
  std::vector<NuclearSpin> nuclei_;
  std::vector<DetuningComponent> mixture_;
};

// Three equally weighted detunings -A, 0, +A (MHz).
std::vector<DetuningComponent> nitrogen_triplet(double splitting_mhz = 2.16);

enum class NvTransition { kZeroToMinusOne, kZeroToPlusOne };

double nv_transition_frequency_mhz(double b0_mt, NvTransition which);

// Throws for kCustom; use the NuclearSpin overload instead.
double larmor_frequency_khz(Species species, double b0_mt);
double larmor_frequency_khz(const NuclearSpin &spin, double b0_mt);

struct ConditionalFrequencies {
  double f0_khz;
  double f1_khz;
};

ConditionalFrequencies conditional_precession_frequencies(
    const NuclearSpin &spin, double b0_mt);
ConditionalFrequencies conditional_precession_frequencies(
    double f0_khz, const HyperfineCoupling &coupling);

// Nuclear Hamiltonians in kHz conditioned on the NV state.
struct ConditionalHamiltonians {
  Eigen::Matrix2cd ms0;
  Eigen::Matrix2cd ms_minus1;
};

ConditionalHamiltonians build_conditional_hamiltonians(const NuclearSpin &spin,
                                                       double b0_mt);
ConditionalHamiltonians build_conditional_hamiltonians(
    double f0_khz, const HyperfineCoupling &coupling);

}  // namespace nvsense

#endif  // NVSENSE_PHYSICS_HPP_
