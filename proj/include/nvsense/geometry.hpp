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

#ifndef NVSENSE_GEOMETRY_HPP_
#define NVSENSE_GEOMETRY_HPP_

#include <span>

#include "nvsense/fit_result.hpp"

namespace nvsense {

class CylindricalMagnet {
 public:
  CylindricalMagnet(double remanence_mt, double radius_mm, double height_mm);

  double remanence_mt() const { return br_; }
  double radius_mm() const { return u_; }
  double height_mm() const { return h_; }

  // Catalogue entries: 10 mm radius, 5 mm and 20 mm tall, 1270 mT.
  static CylindricalMagnet magnet_1();
  static CylindricalMagnet magnet_2();

 private:
  double br_, u_, h_;
};

class StageGeometry {
 public:
  StageGeometry(double tilt_deg = 35.0, double plate_thickness_mm = 5.0,
                double actuator_travel_mm = 25.0);

  double tilt_deg() const { return tilt_; }
  double plate_thickness_mm() const { return th_; }
  double actuator_travel_mm() const { return dtr_; }

 private:
  double tilt_, th_, dtr_;
};

// On-axis field of a uniformly magnetized cylinder at distance d from the
// top face, mT. Throws DomainError for d < 0.
double magnet_field_mt(const CylindricalMagnet &magnet, double d_mm);

// Same field with unit remanence; magnet_field_mt = B_r * this.
double magnet_field_shape(double radius_mm, double height_mm, double d_mm);

// Closest approach before the magnet rim touches the tilted plate.
double minimum_distance_mm(const StageGeometry &geom,
                           const CylindricalMagnet &magnet);

struct FieldSample {
  double d_mm;
  double b0_mt;
};

// Linear least squares for B_r with the geometry held fixed. Degenerate
// input returns converged = false rather than throwing.
FitResult calibrate_remanence(std::span<const FieldSample> samples,
                              double radius_mm, double height_mm);

// Bisection inverse of magnet_field_mt. Throws DomainError when the target
// is outside (0, surface field).
double field_to_distance_mm(const CylindricalMagnet &magnet, double b0_mt);

double diffraction_limit_nm(double wavelength_nm, double numerical_aperture);

}  // namespace nvsense

#endif  // NVSENSE_GEOMETRY_HPP_
