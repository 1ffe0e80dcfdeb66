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


#include "nvsense/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"
#include "nvsense/kernels.hpp"

namespace nvsense {

std::string window_name(Window w) { return w == Window::kHann ? "hann" : "none"; }

Window window_from_name(const std::string &name) {
  if (name == "hann") return Window::kHann;
  if (name == "none" || name == "rect") return Window::kNone;
  throw DomainError("unknown window '" + name + "'");
}

double frequency_scale(const std::string &x_unit, std::string *unit) {
  struct Entry {
    const char *x;
    double to_khz;
  };
  static const Entry table[] = {{"s", 1e-3}, {"ms", 1.0}, {"us", 1e3}, {"ns", 1e6}};
  for (const auto &e : table) {
    if (x_unit == e.x) {
      *unit = "kHz";
      return e.to_khz;
    }
  }
  *unit = x_unit.empty() ? "cycles/sample" : "1/" + x_unit;
  return 1.0;
}

Spectrum spectrum(const MeasurementTrace &t, const SpectrumOptions &opts) {
  const std::size_t n = t.size();
  if (n < 4) throw DomainError("spectrum needs at least 4 samples");
  if (t.y.size() != n) throw DomainError("trace x and y differ in length");
  if (opts.zero_pad < 1) throw DomainError("zero padding factor must be >= 1");
  const double dx = (t.x.back() - t.x.front()) / static_cast<double>(n - 1);
  if (!(dx > 0)) throw DomainError("spectrum needs an increasing axis");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((t.x[i] - t.x[i - 1]) - dx) > 1e-6 * dx)
      throw DomainError("spectrum needs uniform sampling; step " + std::to_string(i) +
                        " deviates from the mean spacing");
  }
  for (double v : t.y)
    if (!std::isfinite(v)) throw DomainError("spectrum input contains non-finite values");

  std::vector<double> w(n, 1.0);
  if (opts.window == Window::kHann)
    for (std::size_t j = 0; j < n; ++j)
      w[j] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(n - 1));
  double mean = 0.0;
  for (double v : t.y) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> yw(n);
  double wsum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    yw[j] = w[j] * (t.y[j] - mean);
    wsum += w[j];
  }

  const std::size_t M = n * static_cast<std::size_t>(opts.zero_pad);
  const std::size_t K = M / 2 + 1;
  std::vector<double> ang(M), sn(M), cs(M);
  for (std::size_t l = 0; l < M; ++l) {
    // Reduced to [-pi, pi).
    const double frac = static_cast<double>(l) / static_cast<double>(M);
    ang[l] = kTwoPi * (frac < 0.5 ? frac : frac - 1.0);
  }
  const auto &kt = kernels::active();
  kt.sincos(ang.data(), sn.data(), cs.data(), M);

  std::vector<std::complex<double>> X(K);
  std::vector<double> cg(n), sg(n);
  for (std::size_t k = 0; k < K; ++k) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      cg[j] = cs[idx];
      sg[j] = sn[idx];
      idx += k;
      if (idx >= M) idx -= M;
    }
    double ac = 0.0, as = 0.0;
    kt.dot2(yw.data(), cg.data(), sg.data(), n, &ac, &as);
    X[k] = {ac, -as};
  }

  Spectrum s;
  const double scale = frequency_scale(t.x_unit, &s.unit);
  s.bin_width = scale / (static_cast<double>(M) * dx);
  s.frequency.resize(K);
  s.amplitude.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    s.frequency[k] = static_cast<double>(k) * s.bin_width;
    s.amplitude[k] = 2.0 * std::abs(X[k]) / wsum;
  }
  s.amplitude[0] = 0.0;  // DC removed

  double top = 0.0;
  for (std::size_t k = 1; k < K; ++k) top = std::max(top, s.amplitude[k]);
  const bool jacobsen = opts.window == Window::kNone && opts.zero_pad == 1;
  const auto &a = s.amplitude;
  for (std::size_t k = 1; k + 1 < K; ++k) {
    if (!(a[k] >= a[k - 1] && a[k] > a[k + 1])) continue;
    if (a[k] < opts.threshold * top || a[k] < opts.min_amplitude) continue;
    SpectrumPeak p;
    double delta = 0.0;
    double amp = a[k];
    if (jacobsen) {
      const auto den = 2.0 * X[k] - X[k - 1] - X[k + 1];
      if (std::abs(den) > 0) delta = ((X[k - 1] - X[k + 1]) / den).real();
      p.method = "jacobsen";
    } else {
      p.method = "log-parabola";
      if (a[k - 1] > 0 && a[k + 1] > 0) {
        const double l0 = std::log(a[k - 1]), l1 = std::log(a[k]), l2 = std::log(a[k + 1]);
        const double den = l0 - 2.0 * l1 + l2;
        if (den < 0) {
          delta = 0.5 * (l0 - l2) / den;
          amp = std::exp(l1 - 0.25 * (l0 - l2) * delta);
        }
      }
    }
    delta = std::clamp(delta, -0.5, 0.5);
    p.frequency = (static_cast<double>(k) + delta) * s.bin_width;
    p.amplitude = amp;
    // Half maximum crossings by linear interpolation.
    const double half = 0.5 * a[k];
    double left = -1.0, right = -1.0;
    for (std::size_t j = k; j > 0; --j) {
      if (a[j - 1] <= half) {
        left = static_cast<double>(k) - (static_cast<double>(j) - (a[j] - half) / (a[j] - a[j - 1]));
        break;
      }
    }
    for (std::size_t j = k; j + 1 < K; ++j) {
      if (a[j + 1] <= half) {
        right = (static_cast<double>(j) + (a[j] - half) / (a[j] - a[j + 1])) - static_cast<double>(k);
        break;
      }
    }
    double hw = 0.0;
    if (left >= 0 && right >= 0)
      hw = 0.5 * (left + right);
    else
      hw = std::max(left, right);
    p.half_width = std::max(hw, 0.0) * s.bin_width;
    s.peaks.push_back(p);
  }
  std::stable_sort(s.peaks.begin(), s.peaks.end(), [](const SpectrumPeak &l, const SpectrumPeak &r) {
    if (l.amplitude != r.amplitude) return l.amplitude > r.amplitude;
    return l.frequency < r.frequency;
  });
  if (s.peaks.size() > opts.max_peaks) s.peaks.resize(opts.max_peaks);
  return s;
}

}  // namespace nvsense
