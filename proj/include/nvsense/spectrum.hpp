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


#ifndef NVSENSE_SPECTRUM_HPP_
#define NVSENSE_SPECTRUM_HPP_

#include <string>
#include <vector>

#include "nvsense/trace.hpp"

namespace nvsense {

enum class Window { kNone, kHann };

std::string window_name(Window w);
Window window_from_name(const std::string &name);

struct SpectrumPeak {
  double frequency = 0.0;  // in Spectrum::unit
  double amplitude = 0.0;  // single-sided sinusoid amplitude estimate
  double half_width = 0.0; // half width at half maximum, same unit
  std::string method;      // "jacobsen" or "log-parabola"
};

struct SpectrumOptions {
  Window window = Window::kHann;
  int zero_pad = 1;          // transform length = zero_pad * samples
  double threshold = 0.1;    // peaks below threshold * max are dropped
  double min_amplitude = 1e-9;
  std::size_t max_peaks = 16;
};

struct Spectrum {
  std::vector<double> frequency;
  std::vector<double> amplitude;
  std::string unit;  // kHz for time axes in s, ms, us or ns
  double bin_width = 0.0;
  // Descending amplitude; equal amplitudes list the lower frequency first.
  std::vector<SpectrumPeak> peaks;
};

// Direct DFT of the mean-removed, windowed trace over bins 0..M/2.
// Amplitude is 2 |X_k| / sum(w). Peaks are interior local maxima refined
// from three bins: complex three-point interpolation for an unpadded
// rectangular window, a parabola through log magnitudes otherwise.
// Throws DomainError for fewer than 4 points or non-uniform sampling.
Spectrum spectrum(const MeasurementTrace &trace, const SpectrumOptions &opts = {});

// Scale from 1/x_unit to the reported unit; sets `unit`.
double frequency_scale(const std::string &x_unit, std::string *unit);

}  // namespace nvsense

#endif  // NVSENSE_SPECTRUM_HPP_
