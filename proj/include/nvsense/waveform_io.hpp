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

#ifndef NVSENSE_WAVEFORM_IO_HPP_
#define NVSENSE_WAVEFORM_IO_HPP_

#include <cstdint>
#include <string>

#include "nvsense/waveform.hpp"

namespace nvsense {

// Waveform file layout. A text header of "key: value" lines:
//
//   nvsense-waveform: 1
//   format: csv            (or f32le)
//   sample_rate_gsps: 1
//   f_if_mhz: 100
//   theta_if_deg: 0
//   channels: 2
//   samples: 48
//   end_header
//
// followed by either one "i,q" line per sample (17 significant digits, so
// doubles roundtrip exactly) or 8 bytes per sample: I then Q as
// little-endian IEEE binary32. The binary variant stores float32, so its
// roundtrip is exact for waveforms passed through quantize_to_f32 first.
enum class WaveformFormat { kCsv, kF32Le };

std::string waveform_format_name(WaveformFormat f);
WaveformFormat waveform_format_from_name(const std::string &name);

void export_waveform(const IQWaveform &iq, const std::string &path,
                     WaveformFormat format);

// Detects the format from the header.
IQWaveform import_waveform(const std::string &path);

std::string waveform_header(const IQWaveform &iq, WaveformFormat format);

// Exact file size for the binary variant.
std::uint64_t f32le_file_size(const IQWaveform &iq);

}  // namespace nvsense

#endif  // NVSENSE_WAVEFORM_IO_HPP_
