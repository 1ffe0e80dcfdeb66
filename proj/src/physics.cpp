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

#include "nvsense/physics.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "nvsense/errors.hpp"

namespace nvsense {

std::string species_name(Species s) {
  switch (s) {
    case Species::kCarbon13:
      return "c13";
    case Species::kProton:
      return "h1";
    case Species::kCustom:
      return "custom";
  }
  return "custom";
}

Species species_from_name(const std::string &name) {
  if (name == "c13" || name == "13C" || name == "carbon-13") return Species::kCarbon13;
  if (name == "h1" || name == "1H" || name == "proton") return Species::kProton;
  if (name == "custom") return Species::kCustom;
  throw DomainError("unknown nuclear species '" + name + "'");
}

HyperfineCoupling::HyperfineCoupling(double a_parallel_khz,
                                     double a_perpendicular_khz)
    : a_par_(a_parallel_khz), a_perp_(a_perpendicular_khz) {
  if (!std::isfinite(a_parallel_khz) || !std::isfinite(a_perpendicular_khz))
    throw DomainError("hyperfine components must be finite");
  if (a_perpendicular_khz < 0)
    throw DomainError("a_perpendicular must be nonnegative");
}

double tabulated_gamma_khz_per_mt(Species s) {
  switch (s) {
    case Species::kCarbon13:
      return kConstants.gamma_c13_khz_per_mt();
    case Species::kProton:
      return kConstants.gamma_h1_khz_per_mt();
    case Species::kCustom:
      break;
  }
  throw DomainError("custom species has no tabulated gyromagnetic ratio");
}

NuclearSpin::NuclearSpin(Species species, HyperfineCoupling coupling)
    : species_(species),
      gamma_(tabulated_gamma_khz_per_mt(species)),
      coupling_(coupling) {}

NuclearSpin::NuclearSpin(Species species, double gamma_khz_per_mt,
                         HyperfineCoupling coupling)
    : species_(species), gamma_(gamma_khz_per_mt), coupling_(coupling) {
  if (!(gamma_khz_per_mt > 0) || !std::isfinite(gamma_khz_per_mt))
    throw DomainError("gyromagnetic ratio must be positive");
  if (species != Species::kCustom) {
    const double ref = tabulated_gamma_khz_per_mt(species);
    if (std::abs(gamma_khz_per_mt - ref) > 1e-9 * ref) {
      std::ostringstream os;
      os << "gyromagnetic ratio " << gamma_khz_per_mt
         << " kHz/mT does not match species " << species_name(species) << " ("
         << ref << " kHz/mT)";
      throw DomainError(os.str());
    }
  }
}

SpinRegister::SpinRegister(double b0_mt, std::vector<NuclearSpin> nuclei,
                           std::vector<DetuningComponent> nitrogen_mixture)
    : b0_mt_(b0_mt), nuclei_(std::move(nuclei)), mixture_(std::move(nitrogen_mixture)) {
  if (!(b0_mt >= 0) || !std::isfinite(b0_mt))
    throw DomainError("bias field must be nonnegative");
  if (static_cast<int>(nuclei_.size()) > kMaxNuclei) {
    std::ostringstream os;
    os << "register holds " << nuclei_.size() << " nuclei; at most "
       << kMaxNuclei << " are supported";
    throw CapacityError(os.str());
  }
  if (!mixture_.empty()) {
    double sum = 0.0;
    for (const auto &c : mixture_) {
      if (!(c.weight >= 0) || !std::isfinite(c.detuning_mhz))
        throw DomainError("mixture weights must be nonnegative");
      sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw DomainError("mixture weights must sum to 1");
  }
}

std::vector<DetuningComponent> nitrogen_triplet(double splitting_mhz) {
  const double w = 1.0 / 3.0;
  // Weights chosen so the sum is 1 to the last bit.
  return {{-splitting_mhz, w}, {0.0, w}, {splitting_mhz, 1.0 - 2.0 * w}};
}

double nv_transition_frequency_mhz(double b0_mt, NvTransition which) {
  if (!(b0_mt >= 0)) throw DomainError("bias field must be nonnegative");
  const double shift = kConstants.gamma_e_mhz_per_mt() * b0_mt;
  return which == NvTransition::kZeroToMinusOne ? kConstants.d_zfs_mhz() - shift
                                                : kConstants.d_zfs_mhz() + shift;
}

double larmor_frequency_khz(Species species, double b0_mt) {
  if (!(b0_mt >= 0)) throw DomainError("bias field must be nonnegative");
  return tabulated_gamma_khz_per_mt(species) * b0_mt;
}

double larmor_frequency_khz(const NuclearSpin &spin, double b0_mt) {
  if (!(b0_mt >= 0)) throw DomainError("bias field must be nonnegative");
  return spin.gamma_khz_per_mt() * b0_mt;
}

ConditionalFrequencies conditional_precession_frequencies(
    double f0_khz, const HyperfineCoupling &c) {
  const double par = f0_khz + c.a_parallel_khz();
  return {f0_khz, std::hypot(par, c.a_perpendicular_khz())};
}

ConditionalFrequencies conditional_precession_frequencies(
    const NuclearSpin &spin, double b0_mt) {
  return conditional_precession_frequencies(larmor_frequency_khz(spin, b0_mt),
                                            spin.coupling());
}

ConditionalHamiltonians build_conditional_hamiltonians(
    double f0_khz, const HyperfineCoupling &c) {
  using cd = std::complex<double>;
  Eigen::Matrix2cd ix, iz;
  ix << cd(0), cd(0.5), cd(0.5), cd(0);
  iz << cd(0.5), cd(0), cd(0), cd(-0.5);
  ConditionalHamiltonians h;
  h.ms0 = -f0_khz * iz;
  h.ms_minus1 = -f0_khz * iz - (c.a_perpendicular_khz() * ix + c.a_parallel_khz() * iz);
  return h;
}

ConditionalHamiltonians build_conditional_hamiltonians(const NuclearSpin &spin,
                                                       double b0_mt) {
  return build_conditional_hamiltonians(larmor_frequency_khz(spin, b0_mt),
                                        spin.coupling());
}

}  // namespace nvsense
