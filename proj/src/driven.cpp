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


#include "nvsense/driven.hpp"

#include <cmath>
#include <sstream>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"

namespace nvsense {

namespace {

using cd = std::complex<double>;

DrivenState integrate(double detuning, double rabi, const EnvelopeSpec &spec, long n) {
  const double T = spec.duration_ns;
  const double h = T / static_cast<double>(n);
  cd c0(1.0, 0.0), c1(0.0, 0.0);
  for (long k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * h;
    const double dz = detuning - chirp_offset_mhz(spec, t);
    const double dx = rabi * envelope_value(spec, t);
    const double w = 0.5 * std::hypot(dz, dx);  // MHz
    // exp(-2 pi i H h) = cos(a) - i sin(a) H / w, a = 2 pi w h (h in us)
    const double a = kTwoPi * w * h * 1e-3;
    const double ca = std::cos(a);
    const double sa = w > 0 ? std::sin(a) / w : 0.0;
    const cd u00(ca, -sa * 0.5 * dz), u11(ca, sa * 0.5 * dz), u01(0.0, -sa * 0.5 * dx);
    const cd n0 = u00 * c0 + u01 * c1;
    const cd n1 = u01 * c0 + u11 * c1;
    c0 = n0;
    c1 = n1;
  }
  DrivenState s;
  s.c0 = c0;
  s.c1 = c1;
  s.step_ns = h;
  s.steps = static_cast<int>(n);
  return s;
}

}  // namespace

double DrivenState::rotation_angle() const { return 2.0 * std::atan2(std::abs(c1), std::abs(c0)); }

DrivenState evolve_driven(double detuning_mhz, double peak_rabi_mhz, const EnvelopeSpec &spec,
                          double step_ns, const DrivenOptions &opts) {
  spec.validate();
  if (!(spec.duration_ns > 0)) throw DomainError("driven pulse needs a positive duration");
  if (!(step_ns > 0)) throw DomainError("integration step must be positive");
  if (!std::isfinite(detuning_mhz) || !std::isfinite(peak_rabi_mhz))
    throw DomainError("detuning and Rabi frequency must be finite");
  long n = std::max(1L, static_cast<long>(std::ceil(spec.duration_ns / step_ns)));
  DrivenState prev = integrate(detuning_mhz, peak_rabi_mhz, spec, n);
  for (int k = 0; k < opts.max_halvings; ++k) {
    n *= 2;
    DrivenState next = integrate(detuning_mhz, peak_rabi_mhz, spec, n);
    if (std::abs(next.p0() - prev.p0()) < opts.tolerance) return next;
    prev = next;
  }
  std::ostringstream os;
  os << "driven integration did not converge after " << opts.max_halvings
     << " halvings (step " << prev.step_ns << " ns)";
  throw NumericalError(os.str());
}

double calibrated_pi_rabi_mhz(const EnvelopeSpec &spec) {
  spec.validate();
  const double T_us = spec.duration_ns * 1e-3;
  if (!(T_us > 0)) throw DomainError("pulse duration must be positive");
  double area_us = 0.0;
  switch (spec.shape) {
    case EnvelopeShape::kSquare:
      area_us = T_us;
      break;
    case EnvelopeShape::kCosineSquare:
    case EnvelopeShape::kCosineSquareLiteral:
      area_us = 0.5 * T_us;
      break;
    default: {
      const int n = 200000;
      const double h = spec.duration_ns / n;
      for (int k = 0; k < n; ++k) area_us += envelope_value(spec, (k + 0.5) * h);
      area_us *= h * 1e-3;
    }
  }
  // Rotation angle 2 pi Omega * area = pi.
  return 0.5 / area_us;
}

MeasurementTrace pulsed_odmr_profile(double pi_ns, std::span<const double> grid,
                                     const std::vector<DetuningComponent> &mixture,
                                     EnvelopeShape shape, double step_ns) {
  if (grid.empty()) throw DomainError("detuning grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("detuning grid must be strictly increasing");
  EnvelopeSpec spec;
  spec.shape = shape;
  spec.duration_ns = pi_ns;
  const double rabi = calibrated_pi_rabi_mhz(spec);
  std::vector<DetuningComponent> comps = mixture;
  if (comps.empty()) comps.push_back({0.0, 1.0});
  MeasurementTrace t;
  t.axis = AxisKind::kDetuning;
  t.x_unit = "MHz";
  t.y_unit = "P0";
  t.x.assign(grid.begin(), grid.end());
  t.y.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (const auto &c : comps)
      t.y[i] += c.weight * evolve_driven(c.detuning_mhz - grid[i], rabi, spec, step_ns).p0();
  t.set("pi_ns", pi_ns);
  t.set("rabi_MHz", rabi);
  t.set("shape", envelope_shape_name(shape));
  return t;
}

MeasurementTrace synth_cw_odmr(const std::vector<CwResonance> &lines,
                               std::span<const double> grid) {
  for (const auto &l : lines) {
    if (!(l.linewidth_mhz >= 0)) throw DomainError("linewidth must be nonnegative");
    if (!(l.contrast >= 0 && l.contrast <= 1)) throw DomainError("contrast must lie in [0, 1]");
  }
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("frequency grid must be strictly increasing");
  MeasurementTrace t;
  t.axis = AxisKind::kFrequency;
  t.x_unit = "MHz";
  t.y_unit = "contrast";
  t.x.assign(grid.begin(), grid.end());
  t.y.assign(grid.size(), 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const auto &l : lines) {
      const double df = grid[i] - l.frequency_mhz;
      double lor = 0.0;
      if (l.linewidth_mhz == 0.0) {
        lor = df == 0.0 ? 1.0 : 0.0;
      } else {
        const double hw = 0.5 * l.linewidth_mhz;
        lor = hw * hw / (df * df + hw * hw);
      }
      t.y[i] *= 1.0 - l.contrast * lor;
    }
  }
  return t;
}

}  // namespace nvsense
