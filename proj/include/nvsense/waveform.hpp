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

#ifndef NVSENSE_WAVEFORM_HPP_
#define NVSENSE_WAVEFORM_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace nvsense {

enum class EnvelopeShape {
  kSquare,
  kCosineSquare,         // sin^2(pi t / T), single lobe
  kCosineSquareLiteral,  // cos^2(2 pi t / T), kept for comparison
  kWurstStandard,        // 1 - |cos(pi t / T)|^w
  kWurstLiteral,         // 1 - |sin(2 pi t / T)|^w, kept for comparison
};

std::string envelope_shape_name(EnvelopeShape s);
EnvelopeShape envelope_shape_from_name(const std::string &name);

bool is_wurst(EnvelopeShape s);

struct EnvelopeSpec {
  EnvelopeShape shape = EnvelopeShape::kSquare;
  double duration_ns = 0.0;
  double wurst_exponent = 2.0;
  double chirp_span_mhz = 0.0;  // WURST only; sweep runs -span/2 .. +span/2

  // Throws DomainError when an invariant fails.
  void validate() const;
};

// Envelope amplitude at time t within [0, T]. Zero outside.
double envelope_value(const EnvelopeSpec &spec, double t_ns);

// Chirp phase in cycles accumulated from the pulse start to t (exact
// integral of the linear frequency ramp). Zero for non-chirped shapes.
double chirp_phase_cycles(const EnvelopeSpec &spec, double t_ns);

// Instantaneous chirp offset at t, MHz.
double chirp_offset_mhz(const EnvelopeSpec &spec, double t_ns);

// Number of samples covering [0, T) at the given rate.
std::int64_t envelope_sample_count(const EnvelopeSpec &spec,
                                   double sample_rate_gsps);

// A[n] = envelope(n / rate) for n in [0, count). Throws DomainError when
// the pulse resolves to fewer than two samples.
std::vector<double> render_envelope(const EnvelopeSpec &spec,
                                    double sample_rate_gsps);

struct IQWaveform {
  double sample_rate_gsps = 1.0;
  double f_if_mhz = 0.0;
  double theta_if_deg = 0.0;
  std::vector<double> i;
  std::vector<double> q;

  std::size_t size() const { return i.size(); }
  double duration_ns() const {
    return static_cast<double>(i.size()) / sample_rate_gsps;
  }
};

// I[n] = A cos(2 pi f_IF t + theta_IF + chirp), Q[n] = A sin(...). The
// carrier phase is referenced to absolute sample index start_sample + n
// and evaluated with exact integer arithmetic, so a pulse rendered at an
// offset shares its phase with one embedded in a longer sequence.
IQWaveform synthesize_iq(const EnvelopeSpec &spec, double f_if_mhz,
                         double theta_if_deg, double sample_rate_gsps,
                         std::int64_t start_sample = 0);

// Carrier phase in cycles, reduced to [-0.5, 0.5), of
// f * (sample / rate) + theta / 360. Frequencies are quantized to 1 mHz.
double carrier_phase_cycles(double f_mhz, double sample_rate_gsps,
                            std::int64_t sample, double theta_deg);

// Single-sideband upconversion to a real signal at output_rate_gsps, which
// must be an integer multiple of the IQ rate and resolve f_LO + f_IF below
// Nyquist. The baseband envelope (IQ with the IF carrier removed) is
// interpolated linearly between IQ samples; the IF and LO carriers are
// evaluated exactly at each output instant.
std::vector<double> upconvert(const IQWaveform &iq, double f_lo_mhz,
                              double theta_lo_deg, double output_rate_gsps);

// Rounds every sample to float32 precision.
IQWaveform quantize_to_f32(const IQWaveform &iq);

}  // namespace nvsense

#endif  // NVSENSE_WAVEFORM_HPP_
