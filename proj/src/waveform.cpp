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

#include "nvsense/waveform.hpp"

#include <cmath>
#include <sstream>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"
#include "nvsense/kernels.hpp"

namespace nvsense {

std::string envelope_shape_name(EnvelopeShape s) {
  switch (s) {
    case EnvelopeShape::kSquare:
      return "square";
    case EnvelopeShape::kCosineSquare:
      return "cosine-square";
    case EnvelopeShape::kCosineSquareLiteral:
      return "cosine-square-literal";
    case EnvelopeShape::kWurstStandard:
      return "wurst-standard";
    case EnvelopeShape::kWurstLiteral:
      return "wurst-literal";
  }
  return "square";
}

EnvelopeShape envelope_shape_from_name(const std::string &name) {
  if (name == "square") return EnvelopeShape::kSquare;
  if (name == "cosine-square" || name == "cos2") return EnvelopeShape::kCosineSquare;
  if (name == "cosine-square-literal") return EnvelopeShape::kCosineSquareLiteral;
  if (name == "wurst" || name == "wurst-standard") return EnvelopeShape::kWurstStandard;
  if (name == "wurst-literal") return EnvelopeShape::kWurstLiteral;
  throw DomainError("unknown envelope shape '" + name + "'");
}

bool is_wurst(EnvelopeShape s) {
  return s == EnvelopeShape::kWurstStandard || s == EnvelopeShape::kWurstLiteral;
}

void EnvelopeSpec::validate() const {
  if (!(duration_ns > 0) || !std::isfinite(duration_ns))
    throw DomainError("envelope duration must be positive");
  if (!(wurst_exponent > 0)) throw DomainError("WURST exponent must be positive");
  if (!std::isfinite(chirp_span_mhz))
    throw DomainError("chirp span must be finite");
  if (!is_wurst(shape) && chirp_span_mhz != 0.0)
    throw DomainError("only WURST envelopes carry a chirp");
}

double envelope_value(const EnvelopeSpec &spec, double t) {
  const double T = spec.duration_ns;
  if (t < 0 || t > T) return 0.0;
  switch (spec.shape) {
    case EnvelopeShape::kSquare:
      return t < T ? 1.0 : 0.0;
    case EnvelopeShape::kCosineSquare: {
      const double s = std::sin(kPi * t / T);
      return s * s;
    }
    case EnvelopeShape::kCosineSquareLiteral: {
      const double c = std::cos(kTwoPi * t / T);
      return c * c;
    }
    case EnvelopeShape::kWurstStandard:
      return 1.0 - std::pow(std::abs(std::cos(kPi * t / T)), spec.wurst_exponent);
    case EnvelopeShape::kWurstLiteral:
      return 1.0 - std::pow(std::abs(std::sin(kTwoPi * t / T)), spec.wurst_exponent);
  }
  return 0.0;
}

double chirp_offset_mhz(const EnvelopeSpec &spec, double t) {
  if (!is_wurst(spec.shape)) return 0.0;
  const double s = spec.chirp_span_mhz;
  return -0.5 * s + s * t / spec.duration_ns;
}

double chirp_phase_cycles(const EnvelopeSpec &spec, double t) {
  if (!is_wurst(spec.shape) || spec.chirp_span_mhz == 0.0) return 0.0;
  // MHz * ns = 1e-3 cycles.
  const double s = spec.chirp_span_mhz;
  return 1e-3 * (-0.5 * s * t + 0.5 * s * t * t / spec.duration_ns);
}

std::int64_t envelope_sample_count(const EnvelopeSpec &spec, double rate) {
  if (!(rate > 0)) throw DomainError("sample rate must be positive");
  return static_cast<std::int64_t>(std::llround(spec.duration_ns * rate));
}

std::vector<double> render_envelope(const EnvelopeSpec &spec, double rate) {
  spec.validate();
  const std::int64_t n = envelope_sample_count(spec, rate);
  if (n < 2) {
    std::ostringstream os;
    os << "pulse of " << spec.duration_ns << " ns resolves to " << n
       << " sample(s) at " << rate << " GS/s; at least 2 are required";
    throw DomainError(os.str());
  }
  std::vector<double> a(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k)
    a[static_cast<std::size_t>(k)] = envelope_value(spec, static_cast<double>(k) / rate);
  return a;
}

namespace {

using i128 = __int128;

std::int64_t to_millihertz(double f_mhz) {
  return static_cast<std::int64_t>(std::llround(f_mhz * 1e9));
}

double reduce_cycles(double c) { return c - std::floor(c + 0.5); }

}  // namespace

double carrier_phase_cycles(double f_mhz, double rate_gsps, std::int64_t sample,
                            double theta_deg) {
  const std::int64_t f = to_millihertz(f_mhz);
  const std::int64_t r = to_millihertz(rate_gsps * 1e3);
  if (r <= 0) throw DomainError("sample rate must be positive");
  i128 num = static_cast<i128>(sample) * f;
  i128 rem = num % r;
  if (rem < 0) rem += r;
  const double frac = static_cast<double>(static_cast<std::int64_t>(rem)) /
                      static_cast<double>(r);
  return reduce_cycles(reduce_cycles(frac) + reduce_cycles(theta_deg / 360.0));
}

IQWaveform synthesize_iq(const EnvelopeSpec &spec, double f_if_mhz,
                         double theta_if_deg, double rate,
                         std::int64_t start_sample) {
  const std::vector<double> amp = render_envelope(spec, rate);
  const std::size_t n = amp.size();
  std::vector<double> phase(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / rate;
    double c = carrier_phase_cycles(f_if_mhz, rate,
                                    start_sample + static_cast<std::int64_t>(k),
                                    theta_if_deg);
    c = reduce_cycles(c + reduce_cycles(chirp_phase_cycles(spec, t)));
    phase[k] = kTwoPi * c;
  }
  IQWaveform w;
  w.sample_rate_gsps = rate;
  w.f_if_mhz = f_if_mhz;
  w.theta_if_deg = theta_if_deg;
  w.i.resize(n);
  w.q.resize(n);
  std::vector<double> s(n), c(n);
  const auto &kt = kernels::active();
  kt.sincos(phase.data(), s.data(), c.data(), n);
  kt.modulate(amp.data(), s.data(), c.data(), w.i.data(), w.q.data(), n);
  return w;
}

std::vector<double> upconvert(const IQWaveform &iq, double f_lo_mhz,
                              double theta_lo_deg, double out_rate) {
  if (iq.i.size() != iq.q.size())
    throw DomainError("IQ channels differ in length");
  if (!(out_rate > 0)) throw DomainError("output sample rate must be positive");
  const double ratio = out_rate / iq.sample_rate_gsps;
  const std::int64_t m = std::llround(ratio);
  if (m < 1 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * ratio)
    throw DomainError("output rate must be an integer multiple of the IQ rate");
  const double f_top = std::abs(f_lo_mhz) + std::abs(iq.f_if_mhz);
  const double nyquist_mhz = 0.5 * out_rate * 1e3;
  if (!(f_top < nyquist_mhz)) {
    std::ostringstream os;
    os << "f_LO + f_IF = " << f_top << " MHz is not below the Nyquist limit "
       << nyquist_mhz << " MHz of the " << out_rate << " GS/s output";
    throw DomainError(os.str());
  }

  const std::size_t n = iq.size();
  const auto &kt = kernels::active();

  // Baseband envelope: IQ rotated back by the IF carrier.
  std::vector<double> ph(n), s(n), c(n), br(n), bi(n);
  for (std::size_t k = 0; k < n; ++k)
    ph[k] = kTwoPi * carrier_phase_cycles(iq.f_if_mhz, iq.sample_rate_gsps,
                                          static_cast<std::int64_t>(k),
                                          iq.theta_if_deg);
  kt.sincos(ph.data(), s.data(), c.data(), n);
  for (std::size_t k = 0; k < n; ++k) {
    br[k] = iq.i[k] * c[k] + iq.q[k] * s[k];
    bi[k] = iq.q[k] * c[k] - iq.i[k] * s[k];
  }

  const std::size_t total = n * static_cast<std::size_t>(m);
  std::vector<double> out(total);
  std::vector<double> ip(total), qp(total), lo(total), sl(total), cl(total);
  for (std::size_t j = 0; j < total; ++j) {
    const std::size_t k = j / static_cast<std::size_t>(m);
    const double frac = static_cast<double>(j % static_cast<std::size_t>(m)) /
                        static_cast<double>(m);
    double r0 = br[k], i0 = bi[k];
    if (frac > 0 && k + 1 < n) {
      r0 += frac * (br[k + 1] - br[k]);
      i0 += frac * (bi[k + 1] - bi[k]);
    }
    ip[j] = r0;
    qp[j] = i0;
  }
  // IF carrier at output instants.
  std::vector<double> phi(total), si(total), ci(total);
  for (std::size_t j = 0; j < total; ++j) {
    phi[j] = kTwoPi * carrier_phase_cycles(iq.f_if_mhz, out_rate,
                                           static_cast<std::int64_t>(j),
                                           iq.theta_if_deg);
    lo[j] = kTwoPi * carrier_phase_cycles(f_lo_mhz, out_rate,
                                          static_cast<std::int64_t>(j), theta_lo_deg);
  }
  kt.sincos(phi.data(), si.data(), ci.data(), total);
  kt.sincos(lo.data(), sl.data(), cl.data(), total);
  for (std::size_t j = 0; j < total; ++j) {
    const double i_t = ip[j] * ci[j] - qp[j] * si[j];
    const double q_t = ip[j] * si[j] + qp[j] * ci[j];
    ip[j] = i_t;
    qp[j] = q_t;
  }
  kt.iq_mix(ip.data(), qp.data(), cl.data(), sl.data(), out.data(), total);
  return out;
}

IQWaveform quantize_to_f32(const IQWaveform &iq) {
  IQWaveform w = iq;
  for (auto &v : w.i) v = static_cast<double>(static_cast<float>(v));
  for (auto &v : w.q) v = static_cast<double>(static_cast<float>(v));
  return w;
}

}  // namespace nvsense
