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

#include "nvsense/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"

namespace nvsense {

CylindricalMagnet::CylindricalMagnet(double remanence_mt, double radius_mm,
                                     double height_mm)
    : br_(remanence_mt), u_(radius_mm), h_(height_mm) {
  if (!(remanence_mt > 0 && radius_mm > 0 && height_mm > 0) ||
      !std::isfinite(remanence_mt + radius_mm + height_mm))
    throw DomainError("magnet remanence, radius and height must be positive");
}

CylindricalMagnet CylindricalMagnet::magnet_1() { return {1270.0, 10.0, 5.0}; }
CylindricalMagnet CylindricalMagnet::magnet_2() { return {1270.0, 10.0, 20.0}; }

StageGeometry::StageGeometry(double tilt_deg, double plate_thickness_mm,
                             double actuator_travel_mm)
    : tilt_(tilt_deg), th_(plate_thickness_mm), dtr_(actuator_travel_mm) {
  if (!(tilt_deg > 0 && tilt_deg < 90))
    throw DomainError("stage tilt must lie in (0, 90) degrees");
  // Zero thickness is allowed as a limiting case.
  if (!(plate_thickness_mm >= 0) || !(actuator_travel_mm > 0))
    throw DomainError("plate thickness and actuator travel must be positive");
}

double magnet_field_shape(double u, double h, double d) {
  if (!(d >= 0)) throw DomainError("distance must be nonnegative");
  const double top = (h + d) / std::sqrt(u * u + (h + d) * (h + d));
  const double bottom = d / std::sqrt(u * u + d * d);
  return 0.5 * (top - bottom);
}

double magnet_field_mt(const CylindricalMagnet &m, double d_mm) {
  return m.remanence_mt() * magnet_field_shape(m.radius_mm(), m.height_mm(), d_mm);
}

double minimum_distance_mm(const StageGeometry &g, const CylindricalMagnet &m) {
  const double t = g.tilt_deg() * kPi / 180.0;
  return m.radius_mm() / std::tan(t) + g.plate_thickness_mm() / std::sin(t);
}

FitResult calibrate_remanence(std::span<const FieldSample> samples,
                              double radius_mm, double height_mm) {
  FitResult r;
  r.names = {"B_r"};
  r.values = {0.0};
  r.uncertainties = {0.0};
  r.fixed = {false};
  r.at_bound = {false};
  r.provenance["radius_mm"] = radius_mm;
  r.provenance["height_mm"] = height_mm;
  r.provenance["samples"] = samples.size();

  std::vector<double> ds;
  for (const auto &s : samples) ds.push_back(s.d_mm);
  std::sort(ds.begin(), ds.end());
  const auto distinct = std::unique(ds.begin(), ds.end()) - ds.begin();
  if (samples.size() < 2 || distinct < 2) {
    r.status = "degenerate samples: need at least two distinct distances";
    return r;
  }
  if (!(radius_mm > 0 && height_mm > 0)) {
    r.status = "invalid magnet geometry";
    return r;
  }

  double sgg = 0.0, sgb = 0.0;
  std::vector<double> g(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].d_mm >= 0) || !std::isfinite(samples[i].b0_mt)) {
      r.status = "invalid sample";
      return r;
    }
    g[i] = magnet_field_shape(radius_mm, height_mm, samples[i].d_mm);
    sgg += g[i] * g[i];
    sgb += g[i] * samples[i].b0_mt;
  }
  const double br = sgb / sgg;
  double rss = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double e = samples[i].b0_mt - br * g[i];
    rss += e * e;
  }
  const double dof = static_cast<double>(samples.size() - 1);
  r.values[0] = br;
  r.uncertainties[0] = std::sqrt(rss / dof / sgg);
  r.residual_norm = std::sqrt(rss);
  r.iterations = 1;
  r.converged = true;
  r.status = "closed-form linear least squares";
  return r;
}

double field_to_distance_mm(const CylindricalMagnet &m, double b0_mt) {
  const double surface = magnet_field_mt(m, 0.0);
  if (!(b0_mt > 0 && b0_mt < surface)) {
    std::ostringstream os;
    os << "target field " << b0_mt << " mT is outside (0, " << surface
       << ") mT attainable by this magnet";
    throw DomainError(os.str());
  }
  double lo = 0.0, hi = std::max(1.0, m.radius_mm());
  while (magnet_field_mt(m, hi) > b0_mt) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("field inversion failed to bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (magnet_field_mt(m, mid) > b0_mt)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double diffraction_limit_nm(double wavelength_nm, double na) {
  if (!(wavelength_nm > 0 && na > 0))
    throw DomainError("wavelength and numerical aperture must be positive");
  return wavelength_nm / (2.0 * na);
}

}  // namespace nvsense
