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


#ifndef NVSENSE_PIPELINES_HPP_
#define NVSENSE_PIPELINES_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nvsense/analytic.hpp"
#include "nvsense/fit.hpp"
#include "nvsense/physics.hpp"
#include "nvsense/sequences.hpp"
#include "nvsense/simulator.hpp"
#include "nvsense/trace.hpp"

namespace nvsense {

// ---- envelope normalization ----

// Fits 1/2 + 1/2 e^{-(w/T)^p} to the masked points (signal-free regions),
// with w the coherence window of the kind. mask empty means all points.
DecoherenceEnvelope fit_envelope(const MeasurementTrace &trace, const std::vector<bool> &mask,
                                 EnvelopeKind kind, FitResult *details = nullptr);

// 1/2 + (P0 - 1/2) / e(w): baseline 1 where the envelope describes the
// decay. Throws DomainError when the envelope is below 1e-12 at a masked
// point; unmasked points with such an envelope become NaN.
MeasurementTrace normalize_by_envelope(const MeasurementTrace &trace,
                                       const DecoherenceEnvelope &env,
                                       const std::vector<bool> &mask = {});

// ---- hyperfine extraction ----

struct HyperfineBundle {
  MeasurementTrace tau_sweep;    // P0 versus tau (us) or (2 tau)^-1 (kHz)
  MeasurementTrace correlation;  // P0 versus t_corr (us)
  MeasurementTrace n_sweep;      // P0 versus N, metadata tau_us
  std::optional<double> larmor_khz;
};

struct HyperfineOptions {
  double min_dip_depth = 1e-3;
  double min_oscillation = 1e-4;  // N-sweep amplitude below this: no f_r
  int zero_pad = 4;
};

enum class ExtractionStatus { kResolved, kUnderdetermined, kUncoupled };

std::string extraction_status_name(ExtractionStatus s);

struct HyperfineExtraction {
  ExtractionStatus status = ExtractionStatus::kUnderdetermined;
  HyperfineCoupling coupling;
  double f0_khz = 0.0;
  double f1_khz = 0.0;
  double fr_khz = 0.0;
  double tau_us = 0.0;
  nlohmann::json report = nlohmann::json::object();
};

// tau dip -> two-tone correlation spectrum refined by least squares (f0 is
// the line nearest the Larmor frequency when known, else the lower) ->
// N-sweep on the N tau axis, least-squares cosine -> f_r alias choice
// between f and 1/(2 tau) - f by the predicted oscillation amplitude and
// offset -> invert_hyperfine.
HyperfineExtraction extract_hyperfine_pipeline(const HyperfineBundle &bundle,
                                               const HyperfineOptions &opts = {});

struct BundlePlan {
  std::vector<double> tau_grid_us;  // tau sweep
  SequenceKind tau_kind = SequenceKind::kXy8;
  int tau_pulses = 16;
  // Correlation blocks and the N sweep run at this tau; NaN picks the tau
  // sweep minimum.
  double probe_tau_us = std::numeric_limits<double>::quiet_NaN();
  int corr_pulses = 8;
  double t_corr_step_us = 0.5;
  int t_corr_points = 1000;
  double t_corr_start_us = 0.0;
  int n_max = 200;  // N sweep over 2, 4, ..., n_max with CPMG trains
  int threads = 1;
};

// Simulates the three traces of a bundle with the ideal-pulse simulator.
HyperfineBundle simulate_hyperfine_bundle(const SpinRegister &reg, const BundlePlan &plan);

// Grid search over an unknown nucleus' f_r: each candidate is inverted with
// (f0, f1, tau_inv), added to the known register and scored by the squared
// difference to the measured spectrum inside [band_lo, band_hi] kHz.
struct FrSearchResult {
  double best_fr_khz = 0.0;
  HyperfineCoupling best_coupling;
  double best_loss = 0.0;
  std::vector<double> fr_grid;
  std::vector<double> losses;  // +inf where inversion fails
};

FrSearchResult grid_search_fr(const MeasurementTrace &measured, const SpinRegister &known,
                              Species species, double f0_khz, double f1_khz, double tau_inv_us,
                              std::span<const double> fr_grid_khz, int n_pulses,
                              const FullSpectrumOptions &opts, double band_lo_khz,
                              double band_hi_khz);

// ---- decay and correlation fits ----

struct RamseyFitOptions {
  std::optional<double> t2s_us, p, a0, a1, a2_mhz;  // initial values; heuristic when absent
  double a3 = 0.0;
  bool fix_a3 = true;
  bool fix_amplitudes = false;  // hold a0, a1 at their initial values
};

// Parameters t2s_us, p, a0, a1, a2_MHz, a3 on a tau (us) trace.
FitResult fit_ramsey(const MeasurementTrace &trace, const RamseyFitOptions &opts = {});

// Parameters t2_us, p; x is the echo half-interval tau (us).
FitResult fit_echo(const MeasurementTrace &trace, std::optional<double> t2_guess = {},
                   std::optional<double> p_guess = {});

// Parameters zeta, eta, gamma1_per_ns, gamma2_per_ns on a delay (ns) trace;
// provenance g2_zero = 1 - zeta.
FitResult fit_g2(const MeasurementTrace &trace);

// ---- proton depth ----

struct DepthOptions {
  double rho_per_m3 = 6e28;
  int n_pulses = 64;
  double f_h_khz = 1000.0;
  bool free_f_h = false;
  double depth_lower_nm = 0.5;
  double depth_upper_nm = 200.0;
};

// Fits C(tau) = 2 P0_norm - 1 with B_rms tied to the depth. The trace may
// be on the tau (us) or (2 tau)^-1 (kHz) axis. Parameters depth_nm and
// f_h_kHz (fixed unless free_f_h).
FitResult extract_depth_pipeline(const MeasurementTrace &normalized,
                                 const DepthOptions &opts = {});

}  // namespace nvsense

#endif  // NVSENSE_PIPELINES_HPP_
