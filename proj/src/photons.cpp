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


#include "nvsense/photons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nvsense/errors.hpp"

namespace nvsense {

void ReadoutModel::validate() const {
  if (!(dark_per_shot > 0)) throw DomainError("dark counts per shot must be positive");
  if (!(bright_per_shot > dark_per_shot))
    throw DomainError("bright counts per shot must exceed dark counts");
  if (shots < 1) throw DomainError("shots per point must be at least 1");
}

std::uint64_t point_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master ^ (index * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t poisson_draw(double mean, std::mt19937_64 &rng) {
  if (!(mean >= 0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::int64_t> d(mean);
  return d(rng);
}

PhotonSample sample_photons(const MeasurementTrace &p0, const ReadoutModel &m) {
  m.validate();
  const double n = static_cast<double>(m.shots);
  PhotonSample out;
  out.counts = p0;
  out.counts.y_unit = "counts";
  out.estimate = p0;
  out.estimate.y_unit = "P0";
  out.bright_ref.resize(p0.size());
  out.dark_ref.resize(p0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) {
    std::mt19937_64 rng(point_seed(m.seed, i));
    const double p = std::clamp(p0.y[i], 0.0, 1.0);
    const std::int64_t s = poisson_draw(n * (m.dark_per_shot + p * (m.bright_per_shot - m.dark_per_shot)), rng);
    const std::int64_t b = poisson_draw(n * m.bright_per_shot, rng);
    const std::int64_t d = poisson_draw(n * m.dark_per_shot, rng);
    out.counts.y[i] = static_cast<double>(s);
    out.bright_ref[i] = b;
    out.dark_ref[i] = d;
    if (b == d) {
      out.flagged.push_back(i);
      out.estimate.y[i] = std::numeric_limits<double>::quiet_NaN();
    } else {
      out.estimate.y[i] = static_cast<double>(s - d) / static_cast<double>(b - d);
    }
  }
  for (MeasurementTrace *t : {&out.counts, &out.estimate}) {
    t->set("seed", std::to_string(m.seed));
    t->set("shots", std::to_string(m.shots));
    t->set("bright_per_shot", m.bright_per_shot);
    t->set("dark_per_shot", m.dark_per_shot);
  }
  out.estimate.set("flagged_points", std::to_string(out.flagged.size()));
  return out;
}

MeasurementTrace expected_estimate(const MeasurementTrace &p0, const ReadoutModel &m) {
  m.validate();
  const double n = static_cast<double>(m.shots);
  MeasurementTrace t = p0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = n * (m.dark_per_shot + p0.y[i] * (m.bright_per_shot - m.dark_per_shot));
    t.y[i] = (s - n * m.dark_per_shot) / (n * m.bright_per_shot - n * m.dark_per_shot);
  }
  return t;
}

double estimator_sigma(double p0, const ReadoutModel &m) {
  m.validate();
  const double n = static_cast<double>(m.shots);
  const double b = m.bright_per_shot, d = m.dark_per_shot;
  const double var_s = n * (d + p0 * (b - d));
  const double var = var_s + (p0 - 1) * (p0 - 1) * n * d + p0 * p0 * n * b;
  return std::sqrt(var) / (n * (b - d));
}

MeasurementTrace poisson_resample(const MeasurementTrace &expected, double scale,
                                  std::uint64_t seed) {
  if (!(scale > 0)) throw DomainError("count scale must be positive");
  MeasurementTrace t = expected;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::mt19937_64 rng(point_seed(seed, i));
    t.y[i] = static_cast<double>(poisson_draw(std::max(0.0, expected.y[i]) * scale, rng)) / scale;
  }
  t.set("seed", std::to_string(seed));
  t.set("count_scale", scale);
  return t;
}

}  // namespace nvsense
