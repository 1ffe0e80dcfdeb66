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


#ifndef NVSENSE_PHOTONS_HPP_
#define NVSENSE_PHOTONS_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "nvsense/trace.hpp"

namespace nvsense {

struct ReadoutModel {
  double bright_per_shot = 0.02;  // mean counts per shot, m_S = 0
  double dark_per_shot = 0.014;   // m_S = -1
  std::int64_t shots = 100000;
  std::uint64_t seed = 1;

  // bright > dark > 0, shots >= 1.
  void validate() const;
};

// splitmix64 finalizer of (master ^ index * golden ratio).
std::uint64_t point_seed(std::uint64_t master, std::uint64_t index);

// Poisson draw with std::poisson_distribution on the given engine.
std::int64_t poisson_draw(double mean, std::mt19937_64 &rng);

struct PhotonSample {
  MeasurementTrace counts;    // signal counts per point
  MeasurementTrace estimate;  // (S - D_ref) / (B_ref - D_ref); NaN when flagged
  std::vector<std::int64_t> bright_ref;
  std::vector<std::int64_t> dark_ref;
  std::vector<std::size_t> flagged;  // points with B_ref == D_ref
};

// Per point i, three draws from an engine seeded by point_seed(seed, i):
// signal with mean shots (dark + P0 (bright - dark)), then bright and dark
// references. Values of P0 are clamped to [0, 1] first.
PhotonSample sample_photons(const MeasurementTrace &p0, const ReadoutModel &model);

// Infinite-shot path: the estimator evaluated on expected counts.
MeasurementTrace expected_estimate(const MeasurementTrace &p0, const ReadoutModel &model);

// First-order propagation of the three independent Poisson counts through
// the estimator.
double estimator_sigma(double p0, const ReadoutModel &model);

// y -> Poisson(y * scale) / scale per point, seeded per point.
MeasurementTrace poisson_resample(const MeasurementTrace &expected, double scale,
                                  std::uint64_t seed);

}  // namespace nvsense

#endif  // NVSENSE_PHOTONS_HPP_
