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


#ifndef NVSENSE_DRIVEN_HPP_
#define NVSENSE_DRIVEN_HPP_

#include <complex>
#include <span>
#include <vector>

#include "nvsense/physics.hpp"
#include "nvsense/trace.hpp"
#include "nvsense/waveform.hpp"

namespace nvsense {

// Amplitudes of the m_S = 0 (c0) and m_S = -1 (c1) levels after a pulse
// that started in m_S = 0.
struct DrivenState {
  std::complex<double> c0{1.0, 0.0};
  std::complex<double> c1{0.0, 0.0};
  double step_ns = 0.0;  // accepted step
  int steps = 0;

  double p0() const { return std::norm(c0); }
  double p_minus1() const { return std::norm(c1); }
  // 2 atan2(|c1|, |c0|), radians in [0, pi].
  double rotation_angle() const;
};

struct DrivenOptions {
  double tolerance = 1e-6;  // |dP0| between a step and its half
  int max_halvings = 20;
};

// Rotating frame, RWA: H = (Delta(t) sz + Omega A(t) sx) / 2 in MHz with
// Delta(t) = detuning - chirp_offset(t). Piecewise-constant exact 2x2
// exponentials sampled at step midpoints; the step is halved until P0
// moves by less than the tolerance, else NumericalError.
DrivenState evolve_driven(double detuning_mhz, double peak_rabi_mhz,
                          const EnvelopeSpec &spec, double step_ns = 1.0,
                          const DrivenOptions &opts = {});

// Peak Rabi frequency giving a resonant pi rotation for the envelope
// (1/(2T) square, 1/T cosine-square; numeric area otherwise).
double calibrated_pi_rabi_mhz(const EnvelopeSpec &spec);

// P0 versus microwave detuning (MHz) for a calibrated pi pulse of the given
// shape and length, weight-averaged over the mixture (empty: resonant only).
MeasurementTrace pulsed_odmr_profile(double pi_ns, std::span<const double> detuning_grid_mhz,
                                     const std::vector<DetuningComponent> &mixture,
                                     EnvelopeShape shape = EnvelopeShape::kSquare,
                                     double step_ns = 1.0);

struct CwResonance {
  double frequency_mhz;
  double linewidth_mhz;  // FWHM
  double contrast;       // fractional dip depth, [0, 1]
};

// prod_k (1 - C_k L_k(f)), L_k a unit-height Lorentzian. A zero linewidth
// dips only at samples exactly on resonance.
MeasurementTrace synth_cw_odmr(const std::vector<CwResonance> &lines,
                               std::span<const double> frequency_grid_mhz);

}  // namespace nvsense

#endif  // NVSENSE_DRIVEN_HPP_
