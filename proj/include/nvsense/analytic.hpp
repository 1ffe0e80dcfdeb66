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


#ifndef NVSENSE_ANALYTIC_HPP_
#define NVSENSE_ANALYTIC_HPP_

#include <limits>
#include <span>
#include <vector>

#include "nvsense/physics.hpp"
#include "nvsense/trace.hpp"

namespace nvsense {

struct RotationAngles {
  enum class Context { kForward, kInversion };
  double phi0 = 0.0;
  double phi1 = 0.0;
  double phi_r = 0.0;
  Context context = Context::kForward;
};

// phi_{0,1} = pi f_{0,1} tau and phi_r = pi - 2 pi f_r tau.
RotationAngles inversion_angles(double f0_khz, double f1_khz, double fr_khz, double tau_us);

// a_par = (cos phi0 cos phi1 - cos phi_r) / (sin phi0 sin phi1) f1 - f0,
// a_perp = sqrt(f1^2 - (f0 + a_par)^2). Throws InversionUndefinedError when
// |sin phi0 sin phi1| < 1e-12 and InconsistentInputsError for a negative
// radicand.
HyperfineCoupling invert_hyperfine(double f0_khz, double f1_khz, double fr_khz, double tau_us);

enum class DipForm {
  kComposed,  // transverse numerator, cos phi0 cos phi1 product term
  kPrinted,   // longitudinal numerator, cos phi0 sin phi1, for comparison
};

struct DipEvaluation {
  double p0 = 1.0;
  RotationAngles angles;
  bool clamped = false;  // |cos phi_r| exceeded 1 by <= 1e-9
};

// Per-nucleus P0 for an N-pulse train with pulse spacing tau:
// 1 - (m sin(phi0/2) sin(phi1/2) sin(N phi_r/2) / cos(phi_r/2))^2 with
// m = a_perp / f1 (composed form). N must be even and >= 0. |cos phi_r|
// beyond 1 + 1e-9 throws DomainError.
DipEvaluation evaluate_dip(const HyperfineCoupling &c, double f0_khz, double f1_khz,
                           double tau_us, int n_pulses, DipForm form = DipForm::kComposed);
double single_nucleus_dip(const HyperfineCoupling &c, double f0_khz, double f1_khz,
                          double tau_us, int n_pulses, DipForm form = DipForm::kComposed);

// Normalization of the multi-nucleus product.
enum class ProductForm {
  kBloch,    // 1/2 + 1/2 e^{-N tau/T2} prod (2 P_i - 1)
  kPrinted,  // 1/2 + e^{-N tau/T2} prod (P_i - 1/2)
};

struct FullSpectrumOptions {
  double t2_us = std::numeric_limits<double>::infinity();
  DipForm dip = DipForm::kComposed;
  ProductForm product = ProductForm::kBloch;
};

double full_spectrum_p0(const SpinRegister &reg, double tau_us, int n_pulses,
                        const FullSpectrumOptions &opts = {});

// Trace over (2 tau)^-1 in kHz, ascending, metadata n_pulses.
MeasurementTrace full_spectrum(const SpinRegister &reg, std::span<const double> tau_grid_us,
                               int n_pulses, const FullSpectrumOptions &opts = {});

// B_rms in nT for proton density rho (m^-3) at depth d (nm).
double b_rms_nt(double rho_per_m3, double depth_nm);
// Inverse of b_rms_nt in d.
double depth_from_b_rms_nm(double rho_per_m3, double b_rms_nt);

struct ProtonLayerModel {
  double rho_per_m3 = 6e28;
  double depth_nm = 6.26;
  double f_h_khz = 1000.0;
  int n_pulses = 64;

  void validate() const;
  double b_rms_nt() const { return nvsense::b_rms_nt(rho_per_m3, depth_nm); }
};

// exp[-8 (gamma_e B Ntau)^2 sinc^2(pi N tau (f_h - 1/(2 tau)))], sinc x =
// sin x / x. Throws DomainError at tau <= 0.
double proton_contrast(double b_rms_nt, double f_h_khz, int n_pulses, double tau_us);
MeasurementTrace proton_signal(const ProtonLayerModel &m, std::span<const double> tau_grid_us);

// 1/2 - e^{-(tau/T2*)^p} [a0 + a1 cos(2 pi a2 tau + a3)], a2 in MHz.
double ramsey_model(double tau_us, double t2s_us, double p, double a0, double a1,
                    double a2_mhz, double a3);
// 1/2 [1 + e^{-(2 tau/T2)^p}], tau the echo half-interval.
double echo_model(double tau_us, double t2_us, double p);
// 1 - zeta eta e^{-g1 |t|} + zeta (eta - 1) e^{-g2 |t|}.
double g2_model(double delay_ns, double zeta, double eta, double gamma1_per_ns,
                double gamma2_per_ns);

}  // namespace nvsense

#endif  // NVSENSE_ANALYTIC_HPP_
