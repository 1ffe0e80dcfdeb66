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


#include <catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"
#include "nvsense/waveform.hpp"
#include "nvsense/waveform_io.hpp"

using namespace nvsense;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

EnvelopeSpec make(EnvelopeShape s, double t, double span = 0.0) {
  EnvelopeSpec e;
  e.shape = s;
  e.duration_ns = t;
  e.chirp_span_mhz = span;
  return e;
}

std::string tmp(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

bool bit_equal(const std::vector<double> &a, const std::vector<double> &b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("envelope shapes") {
  const auto cs = make(EnvelopeShape::kCosineSquare, 100);
  CHECK(envelope_value(cs, 0) == 0.0);
  CHECK_THAT(envelope_value(cs, 50), WithinAbs(1.0, 1e-15));
  CHECK(envelope_value(cs, -1) == 0.0);
  const auto lit = make(EnvelopeShape::kCosineSquareLiteral, 100);
  CHECK_THAT(envelope_value(lit, 25), WithinAbs(0.0, 1e-15));
  CHECK_THAT(envelope_value(lit, 50), WithinAbs(1.0, 1e-15));
  const auto w = make(EnvelopeShape::kWurstStandard, 2000, 20);
  CHECK(envelope_value(w, 0) == 0.0);
  CHECK_THAT(envelope_value(w, 1000), WithinAbs(1.0, 1e-15));
  const auto sq = make(EnvelopeShape::kSquare, 10);
  CHECK(envelope_value(sq, 9.99) == 1.0);
  CHECK(envelope_value(sq, 10) == 0.0);
}

TEST_CASE("chirp phase is the integral of the offset") {
  const auto w = make(EnvelopeShape::kWurstStandard, 2000, 20);
  CHECK(chirp_offset_mhz(w, 0) == -10.0);
  CHECK(chirp_offset_mhz(w, 2000) == 10.0);
  // trapezoid on a linear ramp is exact
  const double t = 700, n = 1000;
  double acc = 0;
  for (int k = 0; k < n; ++k) {
    const double a = t * k / n, b = t * (k + 1) / n;
    acc += 0.5 * (chirp_offset_mhz(w, a) + chirp_offset_mhz(w, b)) * (b - a) * 1e-3;
  }
  CHECK_THAT(chirp_phase_cycles(w, t), WithinAbs(acc, 1e-12));
  CHECK(chirp_phase_cycles(make(EnvelopeShape::kSquare, 10), 5) == 0.0);
}

TEST_CASE("envelope validation") {
  CHECK_THROWS_AS(make(EnvelopeShape::kSquare, 0).validate(), DomainError);
  CHECK_THROWS_AS(make(EnvelopeShape::kSquare, 10, 5).validate(), DomainError);
  CHECK_THROWS_AS(render_envelope(make(EnvelopeShape::kSquare, 1.2), 1.0), DomainError);
  CHECK_THROWS_AS(envelope_shape_from_name("triangle"), DomainError);
  CHECK(envelope_shape_from_name(envelope_shape_name(EnvelopeShape::kWurstLiteral)) ==
        EnvelopeShape::kWurstLiteral);
}

TEST_CASE("100 MHz IF at 1 GS/s has a 10-sample period") {
  const auto iq = synthesize_iq(make(EnvelopeShape::kSquare, 200), 100, 0, 1.0);
  REQUIRE(iq.size() == 200);
  for (std::size_t k = 0; k + 10 < iq.size(); ++k) {
    CHECK(iq.i[k] == iq.i[k + 10]);
    CHECK(iq.q[k] == iq.q[k + 10]);
  }
  for (std::size_t p = 1; p < 10; ++p) CHECK(std::abs(iq.i[p] - iq.i[0]) > 1e-3);
}

TEST_CASE("IQ samples follow the closed form") {
  const auto spec = make(EnvelopeShape::kCosineSquare, 64);
  const double f = 37.5, theta = 30.0;
  const auto iq = synthesize_iq(spec, f, theta, 2.0, 0);
  for (std::size_t k = 0; k < iq.size(); ++k) {
    const double t = k / 2.0;
    const double a = envelope_value(spec, t);
    const double ph = kTwoPi * (f * 1e-3 * t) + theta * kPi / 180;
    CHECK_THAT(iq.i[k], WithinAbs(a * std::cos(ph), 1e-12));
    CHECK_THAT(iq.q[k], WithinAbs(a * std::sin(ph), 1e-12));
  }
}

TEST_CASE("carrier phase is referenced to the absolute sample index") {
  const auto spec = make(EnvelopeShape::kSquare, 50);
  const auto a = synthesize_iq(spec, 123.456, 10, 1.0, 1000000007);
  const auto b = synthesize_iq(make(EnvelopeShape::kSquare, 60), 123.456, 10, 1.0, 1000000000);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK_THAT(a.i[k], WithinAbs(b.i[k + 7], 1e-15));
    CHECK_THAT(a.q[k], WithinAbs(b.q[k + 7], 1e-15));
  }
  CHECK_THAT(carrier_phase_cycles(100, 1.0, 5, 0), WithinAbs(-0.5, 1e-15));
  CHECK_THAT(carrier_phase_cycles(100, 1.0, 123456789012LL, 90), WithinAbs(0.45, 1e-12));
}

TEST_CASE("upconversion matches the closed-form real signal") {
  const auto spec = make(EnvelopeShape::kSquare, 100);
  const double f_if = 100, f_lo = 250, th_if = 20, th_lo = 45;
  const auto iq = synthesize_iq(spec, f_if, th_if, 1.0);
  for (double rate : {1.0, 4.0}) {
    const auto s = upconvert(iq, f_lo, th_lo, rate);
    REQUIRE(s.size() == iq.size() * static_cast<std::size_t>(rate));
    double worst = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double t = j / rate;
      const double ph = kTwoPi * (f_lo + f_if) * 1e-3 * t + (th_if + th_lo) * kPi / 180;
      worst = std::max(worst, std::abs(s[j] - std::cos(ph)));
    }
    CHECK(worst <= 1e-12);
  }
  CHECK_THROWS_AS(upconvert(iq, 450, 0, 1.0), DomainError);
  CHECK_THROWS_AS(upconvert(iq, 10, 0, 1.5), DomainError);
}

TEST_CASE("waveform export and import roundtrip bit-exactly") {
  const auto iq = synthesize_iq(make(EnvelopeShape::kWurstStandard, 300, 20), 100, 12.5, 1.0);
  const auto csv = tmp("nvsense_wf.csv");
  export_waveform(iq, csv, WaveformFormat::kCsv);
  const auto back = import_waveform(csv);
  CHECK(bit_equal(back.i, iq.i));
  CHECK(bit_equal(back.q, iq.q));
  CHECK(back.f_if_mhz == iq.f_if_mhz);
  CHECK(back.theta_if_deg == iq.theta_if_deg);

  const auto q32 = quantize_to_f32(iq);
  const auto bin = tmp("nvsense_wf.bin");
  export_waveform(q32, bin, WaveformFormat::kF32Le);
  CHECK(std::filesystem::file_size(bin) == f32le_file_size(q32));
  const auto b2 = import_waveform(bin);
  CHECK(bit_equal(b2.i, q32.i));
  CHECK(bit_equal(b2.q, q32.q));
  std::filesystem::remove(csv);
  std::filesystem::remove(bin);
}

TEST_CASE("import rejects damaged files") {
  const auto p = tmp("nvsense_bad.wf");
  {
    std::ofstream f(p);
    f << "nvsense-waveform: 1\nformat: csv\nsample_rate_gsps: 1\nf_if_mhz: 0\n"
         "theta_if_deg: 0\nchannels: 2\nsamples: 3\nend_header\n0,0\n1,1\n";
  }
  CHECK_THROWS_AS(import_waveform(p), IoError);
  std::filesystem::remove(p);
  CHECK_THROWS_AS(import_waveform("/nonexistent/w.csv"), IoError);
}

TEST_CASE("wurst chirp is linear in instantaneous frequency") {
  const auto w = make(EnvelopeShape::kWurstStandard, 2000, 20);
  const auto iq = synthesize_iq(w, 0, 0, 1.0);
  REQUIRE(iq.size() == 2000);
  double worst = 0;
  for (std::size_t n = 1; n + 2 < iq.size(); ++n) {
    // phase step between samples n and n+1, midpoint frequency
    const std::complex<double> a(iq.i[n], iq.q[n]), b(iq.i[n + 1], iq.q[n + 1]);
    const double f = std::arg(b * std::conj(a)) / kTwoPi * 1e3;
    const double ideal = -10.0 + 20.0 * (n + 0.5) / 2000.0;
    worst = std::max(worst, std::abs(f - ideal));
  }
  CHECK(worst < 0.005 * 20.0);
}

TEST_CASE("iq amplitude stays within unity") {
  for (auto s : {EnvelopeShape::kSquare, EnvelopeShape::kCosineSquare, EnvelopeShape::kWurstStandard,
                 EnvelopeShape::kWurstLiteral}) {
    const bool chirped = s == EnvelopeShape::kWurstStandard || s == EnvelopeShape::kWurstLiteral;
    const auto iq = synthesize_iq(make(s, 500, chirped ? 20 : 0), 100, 30, 1.0);
    for (std::size_t n = 0; n < iq.size(); ++n) {
      CHECK(std::abs(iq.i[n]) <= 1.0);
      CHECK(std::abs(iq.q[n]) <= 1.0);
    }
  }
}

TEST_CASE("empty waveform roundtrips") {
  IQWaveform e;
  for (auto fmt : {WaveformFormat::kCsv, WaveformFormat::kF32Le}) {
    const auto p = tmp("nvsense_empty.wf");
    export_waveform(e, p, fmt);
    const auto back = import_waveform(p);
    CHECK(back.size() == 0);
    CHECK(back.q.empty());
    std::filesystem::remove(p);
  }
}
