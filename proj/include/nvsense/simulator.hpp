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

#ifndef NVSENSE_SIMULATOR_HPP_
#define NVSENSE_SIMULATOR_HPP_

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "nvsense/physics.hpp"
#include "nvsense/sequences.hpp"
#include "nvsense/trace.hpp"

namespace nvsense {

// State over NV (x) nuclei. Index = nv * 2^n + nuclear bits, with nucleus 0
// the most significant nuclear bit and the NV qubit the slowest index.
// nv = 0 is m_S = 0, nv = 1 is m_S = -1; nuclear bit 0 is spin up.
using RegisterState = Eigen::VectorXcd;

struct SimulatorOptions {
  // Treat the correlation storage interval as long against the sensor
  // dephasing time: sensor coherence is erased while populations survive.
  bool storage_dephasing = true;
};

// Probability of m_S = 0 after the plan, starting from m_S = 0 and a fully
// mixed nuclear register, with ideal instantaneous pulses. Phase-cycled
// when plan.phase_cycling is set; averaged over the register's nitrogen
// mixture. Throws CapacityError for more than five nuclei.
double evolve_ideal(const SpinRegister &reg, const SequencePlan &plan,
                    const SimulatorOptions &opts = {});

// Single readout branch, no phase cycling, resonant sensor.
double evolve_ideal_branch(const SpinRegister &reg, const SequencePlan &plan,
                           double detuning_mhz = 0.0,
                           const SimulatorOptions &opts = {});

// Pure-state evolution for unitarity checks. `flip_storage` applies the
// sensor Z at the start of the storage interval (the second dephasing
// branch); it is ignored for plans without one.
RegisterState evolve_state(const SpinRegister &reg, const SequencePlan &plan,
                           const RegisterState &initial, double detuning_mhz = 0.0,
                           bool flip_storage = false);

enum class SweepAxis { kTau, kPulseCount, kCorrelationTime, kInnerPulseCount };

std::string sweep_axis_name(SweepAxis a);
SweepAxis sweep_axis_from_name(const std::string &name);

struct SweepOptions {
  int threads = 1;
  SimulatorOptions sim;
};

// One evolve_ideal per grid point; grid must be nonempty and strictly
// increasing. Output order does not depend on the thread count.
MeasurementTrace simulate_sweep(const SpinRegister &reg, const SequencePlan &tmpl,
                                SweepAxis axis, std::span<const double> grid,
                                const SweepOptions &opts = {});

enum class EnvelopeKind { kRamsey, kEcho, kMultipulse };

std::string envelope_kind_name(EnvelopeKind k);
EnvelopeKind envelope_kind_from_name(const std::string &name);

struct DecoherenceEnvelope {
  EnvelopeKind kind = EnvelopeKind::kMultipulse;
  double time_constant_us = 1.0;  // T2* for Ramsey, T2 otherwise
  double exponent = 1.0;

  void validate() const;
  // exp(-(window / T)^p).
  double factor(double window_us) const;
};

// Coherence window for point i of the trace under the envelope kind:
// Ramsey uses tau; echo and multipulse use N tau (metadata n_pulses and
// tau_us where the axis lacks them). Throws DomainError for axes the kind
// cannot interpret.
double coherence_window_us(const MeasurementTrace &t, std::size_t i, EnvelopeKind kind);

// 0.5 + (P0 - 0.5) * exp(-(window / T)^p) pointwise.
MeasurementTrace apply_envelope(const MeasurementTrace &trace,
                                const DecoherenceEnvelope &env);

// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn);

}  // namespace nvsense

#endif  // NVSENSE_SIMULATOR_HPP_
