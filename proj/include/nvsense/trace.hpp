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

#ifndef NVSENSE_TRACE_HPP_
#define NVSENSE_TRACE_HPP_

#include <map>
#include <string>
#include <vector>

namespace nvsense {

enum class AxisKind {
  kTau,             // us
  kInverseTwoTau,   // kHz, (2 tau)^-1
  kPulseCount,      // N
  kCoherenceTime,   // N tau, us
  kCorrelationTime, // t_corr, us
  kInnerPulseCount, // M
  kFrequency,       // kHz or MHz, see x_unit
  kDetuning,        // MHz
  kDelay,           // ns
  kDistance,        // mm
  kGeneric,
};

std::string axis_kind_name(AxisKind k);
AxisKind axis_kind_from_name(const std::string &name);

struct MeasurementTrace {
  AxisKind axis = AxisKind::kGeneric;
  std::string x_unit;
  std::string y_unit;
  std::vector<double> x;
  std::vector<double> y;
  // Acquisition context: tau_us, n_pulses, register_hash, seed, ...
  std::map<std::string, std::string> metadata;

  std::size_t size() const { return x.size(); }
  bool has(const std::string &key) const { return metadata.count(key) != 0; }
  // Throws DomainError when missing or not numeric.
  double number(const std::string &key) const;
  void set(const std::string &key, double v);
  void set(const std::string &key, const std::string &v) { metadata[key] = v; }
};

// Trace CSV: '#'-prefixed "key: value" header lines (axis, x_unit, y_unit,
// then metadata in key order), a "x,y" column line, then rows with 17
// significant digits.
std::string trace_to_csv(const MeasurementTrace &t,
                         const std::vector<std::string> &extra_header = {});
MeasurementTrace trace_from_csv(const std::string &text, const std::string &origin = "");
void save_trace(const MeasurementTrace &t, const std::string &path,
                const std::vector<std::string> &extra_header = {});
MeasurementTrace load_trace(const std::string &path);

// Relabels a tau sweep onto (2 tau)^-1 in kHz, keeping order ascending in
// the new coordinate.
MeasurementTrace to_inverse_two_tau(const MeasurementTrace &tau_trace);

// Rescales an N sweep onto N tau (us), using metadata tau_us.
MeasurementTrace to_coherence_time(const MeasurementTrace &n_trace);

std::string format_double(double v);

}  // namespace nvsense

#endif  // NVSENSE_TRACE_HPP_
