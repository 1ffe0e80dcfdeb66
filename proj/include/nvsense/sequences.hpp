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

#ifndef NVSENSE_SEQUENCES_HPP_
#define NVSENSE_SEQUENCES_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nvsense/rational.hpp"
#include "nvsense/waveform.hpp"

namespace nvsense {

enum class Axis { kPlusX, kPlusY, kMinusX, kMinusY };
enum class Angle { kHalfPi, kPi };
enum class PulseShapeRef { kSquare, kCosineSquare };

std::string axis_name(Axis a);             // "+x", "-y", ...
double axis_phase_deg(Axis a);             // 0, 90, 180, 270
Axis negate(Axis a);
bool is_x_axis(Axis a);

struct PulseSpec {
  Axis axis = Axis::kPlusX;
  Angle angle = Angle::kPi;
  PulseShapeRef shape = PulseShapeRef::kSquare;
  double duration_ns = 0.0;  // 0 means ideal

  // "X", "Y/2", "-X", ... for audit output.
  std::string label() const;
  bool operator==(const PulseSpec &) const = default;
};

enum class SequenceKind {
  kRamsey,
  kHahn,
  kCp,
  kCpmg,
  kXy4,
  kXy8,
  kXy16,
  kCorrelation,
  kCorrelationMultipulse,
};

std::string sequence_kind_name(SequenceKind k);
SequenceKind sequence_kind_from_name(const std::string &name);

// Repetition block size implied by a pulse-train kind (1 for cp/cpmg).
int natural_block_size(SequenceKind k);

enum class ReadoutPhase { kPlusX, kMinusX };

struct PulseDurations {
  double half_pi_ns = 0.0;
  double pi_ns = 0.0;
  PulseShapeRef half_pi_shape = PulseShapeRef::kSquare;
  PulseShapeRef pi_shape = PulseShapeRef::kCosineSquare;
};

struct SequencePlan {
  SequenceKind kind = SequenceKind::kHahn;
  double tau_us = 1.0;
  int n_pulses = 1;     // pi pulses per train (hahn: 1)
  int block_size = 0;   // 0 selects natural_block_size
  // Pulse-train pattern of the two correlation blocks.
  SequenceKind block_kind = SequenceKind::kXy8;
  double t_corr_us = 0.0;
  int inner_pulses = 0;                // M, correlation-multipulse only
  std::optional<double> inner_tau_us;  // defaults to tau_us
  ReadoutPhase readout = ReadoutPhase::kPlusX;
  bool phase_cycling = true;
  PulseDurations pulses;
  double init_laser_ns = 1000.0;
  double readout_laser_ns = 1000.0;

  // Throws DomainError naming the violated invariant.
  void validate() const;
  int effective_block_size() const;
  bool has_pi_train() const;
};

nlohmann::json plan_to_json(const SequencePlan &plan);
SequencePlan plan_from_json(const nlohmann::json &j);
SequencePlan load_plan(const std::string &path);

// Free interval preceding a pulse, measured from the previous pulse's
// reference point to this pulse's reference point. Pi pulses are referenced
// at their center. A pi/2 pulse is referenced at the edge facing the
// adjacent free interval: its falling edge when the interval follows it,
// its rising edge when the interval precedes it.
enum class Gap { kNone, kHalfTau, kTau, kInnerHalfTau, kInnerTau, kStorage };

std::string gap_name(Gap g);

struct SymbolicPulse {
  PulseSpec pulse;
  Gap gap_before = Gap::kNone;
};

struct SymbolicSequence {
  SequencePlan plan;
  std::vector<SymbolicPulse> pulses;
};

// Ordering per kind: Ramsey X/2-tau-X/2; Hahn and trains
// X/2-tau/2-(pi)-tau-...-(pi)-tau/2-R/2; correlation runs two trains around
// Y/2-storage-Y/2. R/2 is the readout pulse: for trains with pi pulses the
// +x readout is X/2 when the number of x-axis pi pulses is odd and -X/2 when
// it is even, which makes the bare-sensor result P0 = 1. Ramsey keeps a
// literal X/2.
SymbolicSequence build_sequence(const SequencePlan &plan);

// Whether the nominal readout axis was flipped by the parity rule.
bool readout_flipped(const SymbolicSequence &seq);

struct TimedEvent {
  Rational start_ns;
  Rational duration_ns;
  PulseSpec pulse;

  Rational end_ns() const { return start_ns + duration_ns; }
  Rational center_ns() const { return start_ns + duration_ns / Rational(2); }
};

struct LaserMarker {
  Rational start_ns;  // relative to the first microwave event
  Rational duration_ns;
};

struct TimedEventList {
  std::vector<TimedEvent> events;
  Rational sensing_time_ns;  // sum of tau-type free intervals
  Rational end_ns;
  LaserMarker init;
  LaserMarker readout;

  // Human-readable table for audit.
  std::string timing_table() const;
};

// Times are exact rationals in ns; tau and durations are converted at 1 fs
// resolution. The first event starts at t = 0.
TimedEventList expand_timing(const SymbolicSequence &seq);
TimedEventList expand_timing(const SymbolicSequence &seq, double tau_us,
                             const PulseDurations &durations);

std::pair<SequencePlan, SequencePlan> phase_cycle_pair(const SequencePlan &plan);

// 0.5 * (P(+x) + 1 - P(-x)).
double combine_phase_cycled(double p_plus, double p_minus);

struct WaveformSettings {
  double sample_rate_gsps = 1.0;
  double f_if_mhz = 100.0;
  double max_duration_ns = 16.2e6;
};

// Each pulse becomes synthesize_iq output at its rounded start sample with
// theta_IF from its axis; zeros elsewhere.
IQWaveform sequence_to_waveform(const TimedEventList &events,
                                const WaveformSettings &settings);

EnvelopeShape envelope_for(PulseShapeRef s);

}  // namespace nvsense

#endif  // NVSENSE_SEQUENCES_HPP_
