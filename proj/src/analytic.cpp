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


#include "nvsense/analytic.hpp"

#include <cmath>
#include <sstream>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"

namespace nvsense {

RotationAngles inversion_angles(double f0, double f1, double fr, double tau) {
  RotationAngles a;
  a.phi0 = kPi * f0 * tau * 1e-3;
  a.phi1 = kPi * f1 * tau * 1e-3;
  a.phi_r = kPi - kTwoPi * fr * tau * 1e-3;
  a.context = RotationAngles::Context::kInversion;
  return a;
}

HyperfineCoupling invert_hyperfine(double f0, double f1, double fr, double tau) {
  if (!(tau > 0)) throw DomainError("tau must be positive");
  const RotationAngles a = inversion_angles(f0, f1, fr, tau);
  const double ss = std::sin(a.phi0) * std::sin(a.phi1);
  if (std::abs(ss) < 1e-12) {
    std::ostringstream os;
    os << "inversion undefined: sin(phi0) sin(phi1) = " << ss;
    throw InversionUndefinedError(os.str());
  }
  const double a_par =
      (std::cos(a.phi0) * std::cos(a.phi1) - std::cos(a.phi_r)) / ss * f1 - f0;
  const double rad = f1 * f1 - (f0 + a_par) * (f0 + a_par);
  if (rad < 0) {
    std::ostringstream os;
    os << "inconsistent inputs: transverse radicand " << rad << " kHz^2 is negative";
    throw InconsistentInputsError(os.str(), rad);
  }
  return HyperfineCoupling(a_par, std::sqrt(rad));
}

DipEvaluation evaluate_dip(const HyperfineCoupling &c, double f0, double f1, double tau,
                           int n, DipForm form) {
  if (n < 0 || n % 2 != 0) throw DomainError("closed-form dip needs an even pulse count");
  if (!(tau >= 0)) throw DomainError("tau must be nonnegative");
  DipEvaluation out;
  RotationAngles &a = out.angles;
  a.phi0 = kPi * f0 * tau * 1e-3;
  a.phi1 = kPi * f1 * tau * 1e-3;
  const double a_par = c.a_parallel_khz();
  if (f1 == 0.0) {
    // No precession in either branch distinguishes nothing.
    a.phi_r = 0.0;
    return out;
  }
  const double ratio = (a_par + f0) / f1;
  double cr = form == DipForm::kComposed
                  ? std::cos(a.phi0) * std::cos(a.phi1) - ratio * std::sin(a.phi0) * std::sin(a.phi1)
                  : std::cos(a.phi0) * std::sin(a.phi1) - ratio * std::sin(a.phi0) * std::sin(a.phi1);
  if (std::abs(cr) > 1.0) {
    if (std::abs(cr) - 1.0 > 1e-9) {
      std::ostringstream os;
      os << "cos(phi_r) = " << cr << " lies outside [-1, 1]";
      throw DomainError(os.str());
    }
    cr = std::copysign(1.0, cr);
    out.clamped = true;
  }
  a.phi_r = std::acos(cr);
  const double num_coupling = form == DipForm::kComposed ? c.a_perpendicular_khz() : a_par;
  const double m = num_coupling / f1 * std::sin(0.5 * a.phi0) * std::sin(0.5 * a.phi1);
  const double half = 0.5 * a.phi_r;
  const double ch = std::cos(half);
  double ratio_sq = 0.0;
  if (std::abs(ch) < 1e-8) {
    // sin(N x) / cos(x) -> +-N as x -> pi/2 for even N.
    ratio_sq = static_cast<double>(n) * static_cast<double>(n);
  } else {
    const double s = std::sin(n * half) / ch;
    ratio_sq = s * s;
  }
  out.p0 = 1.0 - m * m * ratio_sq;
  return out;
}

double single_nucleus_dip(const HyperfineCoupling &c, double f0, double f1, double tau, int n,
                          DipForm form) {
  return evaluate_dip(c, f0, f1, tau, n, form).p0;
}

double full_spectrum_p0(const SpinRegister &reg, double tau, int n,
                        const FullSpectrumOptions &opts) {
  if (!(opts.t2_us > 0)) throw DomainError("T2 must be positive");
  const double decay = std::isinf(opts.t2_us) ? 1.0 : std::exp(-n * tau / opts.t2_us);
  double prod = 1.0;
  for (const auto &spin : reg.nuclei()) {
    const auto f = conditional_precession_frequencies(spin, reg.b0_mt());
    const double p = single_nucleus_dip(spin.coupling(), f.f0_khz, f.f1_khz, tau, n, opts.dip);
    prod *= opts.product == ProductForm::kBloch ? 2.0 * p - 1.0 : p - 0.5;
  }
  return opts.product == ProductForm::kBloch ? 0.5 + 0.5 * decay * prod : 0.5 + decay * prod;
}

MeasurementTrace full_spectrum(const SpinRegister &reg, std::span<const double> grid, int n,
                               const FullSpectrumOptions &opts) {
  if (grid.empty()) throw DomainError("tau grid is empty");
  MeasurementTrace t;
  t.axis = AxisKind::kTau;
  t.x_unit = "us";
  t.y_unit = "P0";
  for (double tau : grid) {
    if (!(tau > 0)) throw DomainError("tau grid values must be positive");
    t.x.push_back(tau);
    t.y.push_back(full_spectrum_p0(reg, tau, n, opts));
  }
  t.set("n_pulses", static_cast<double>(n));
  t.set("T2_us", opts.t2_us);
  t.set("product_form", opts.product == ProductForm::kBloch ? "bloch" : "printed");
  t.set("dip_form", opts.dip == DipForm::kComposed ? "composed" : "printed");
  return to_inverse_two_tau(t);
}

namespace {

// (mu0/4pi) h gamma_h sqrt(5 pi / 96), SI, times 1e9 for nT.
double b_rms_prefactor() {
  return kConstants.mu0_over_4pi() * kConstants.planck_h() * kConstants.gamma_h1_hz_per_t() *
         std::sqrt(5.0 * kPi / 96.0) * 1e9;
}

}  // namespace

double b_rms_nt(double rho, double d_nm) {
  if (!(rho > 0) || !(d_nm > 0)) throw DomainError("density and depth must be positive");
  const double d = d_nm * 1e-9;
  return b_rms_prefactor() * std::sqrt(rho / (d * d * d));
}

double depth_from_b_rms_nm(double rho, double b) {
  if (!(rho > 0) || !(b > 0)) throw DomainError("density and B_rms must be positive");
  const double k = b_rms_prefactor() * std::sqrt(rho);  // nT m^{3/2}
  return std::pow(k / b, 2.0 / 3.0) * 1e9;
}

void ProtonLayerModel::validate() const {
  if (!(rho_per_m3 > 0)) throw DomainError("proton density must be positive");
  if (!(depth_nm > 0)) throw DomainError("NV depth must be positive");
  if (!(f_h_khz > 0)) throw DomainError("proton frequency must be positive");
  if (n_pulses < 1) throw DomainError("pulse count must be positive");
}

double proton_contrast(double b_nt, double f_h, int n, double tau) {
  if (!(tau > 0)) throw DomainError("proton signal undefined at tau <= 0");
  const double nt_s = n * tau * 1e-6;
  const double phase = kConstants.gamma_e_hz_per_t() * b_nt * 1e-9 * nt_s;
  const double x = kPi * n * tau * (f_h - 1e3 / (2.0 * tau)) * 1e-3;
  const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
  return std::exp(-8.0 * phase * phase * sinc * sinc);
}

MeasurementTrace proton_signal(const ProtonLayerModel &m, std::span<const double> grid) {
  m.validate();
  const double b = m.b_rms_nt();
  MeasurementTrace t;
  t.axis = AxisKind::kTau;
  t.x_unit = "us";
  t.y_unit = "C";
  for (double tau : grid) {
    t.x.push_back(tau);
    t.y.push_back(proton_contrast(b, m.f_h_khz, m.n_pulses, tau));
  }
  t.set("n_pulses", static_cast<double>(m.n_pulses));
  t.set("B_rms_nT", b);
  t.set("f_h_kHz", m.f_h_khz);
  t.set("depth_nm", m.depth_nm);
  t.set("rho_per_m3", m.rho_per_m3);
  return t;
}

double ramsey_model(double tau, double t2s, double p, double a0, double a1, double a2,
                    double a3) {
  return 0.5 - std::exp(-std::pow(std::abs(tau) / t2s, p)) *
                   (a0 + a1 * std::cos(kTwoPi * a2 * tau + a3));
}

double echo_model(double tau, double t2, double p) {
  return 0.5 * (1.0 + std::exp(-std::pow(std::abs(2.0 * tau) / t2, p)));
}

double g2_model(double delay, double zeta, double eta, double g1, double g2) {
  const double t = std::abs(delay);
  if (t == 0.0) return 1.0 - zeta;  // exact antibunching depth
  return 1.0 - zeta * eta * std::exp(-g1 * t) + zeta * (eta - 1.0) * std::exp(-g2 * t);
}

}  // namespace nvsense
