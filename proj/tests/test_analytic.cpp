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
#include <random>

#include "nvsense/analytic.hpp"
#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"
#include "nvsense/simulator.hpp"

using namespace nvsense;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Forward rotation frequency of the periodic pulse unit, from the composed
// rotation of the two conditional precessions.
double forward_fr(double f0, const HyperfineCoupling &c, double tau) {
  const double f1 = std::hypot(f0 + c.a_parallel_khz(), c.a_perpendicular_khz());
  const double p0 = kPi * f0 * tau * 1e-3, p1 = kPi * f1 * tau * 1e-3;
  const double cr = std::cos(p0) * std::cos(p1) - (f0 + c.a_parallel_khz()) / f1 * std::sin(p0) * std::sin(p1);
  return (kPi - std::acos(cr)) / (kTwoPi * tau * 1e-3);
}

SequencePlan cpmg(int n, double tau) {
  SequencePlan p;
  p.kind = SequenceKind::kCpmg;
  p.n_pulses = n;
  p.tau_us = tau;
  return p;
}

}  // namespace

TEST_CASE("inversion angles") {
  const auto a = inversion_angles(50, 300, 19.8, 3.72);
  CHECK_THAT(a.phi0, WithinRel(kPi * 50 * 3.72e-3, 1e-15));
  CHECK_THAT(a.phi_r, WithinRel(kPi - kTwoPi * 19.8 * 3.72e-3, 1e-15));
  CHECK(a.context == RotationAngles::Context::kInversion);
}

TEST_CASE("inversion undoes the forward rotation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> par(-400, 400), perp(20, 400), tau(1, 6);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    const HyperfineCoupling c(par(rng), perp(rng));
    const double t = tau(rng), f0 = 50.3;
    const double f1 = std::hypot(f0 + c.a_parallel_khz(), c.a_perpendicular_khz());
    if (std::abs(std::sin(kPi * f0 * t * 1e-3) * std::sin(kPi * f1 * t * 1e-3)) < 0.2) continue;
    const auto back = invert_hyperfine(f0, f1, forward_fr(f0, c, t), t);
    CHECK_THAT(back.a_parallel_khz(), WithinAbs(c.a_parallel_khz(), 1e-6));
    CHECK_THAT(back.a_perpendicular_khz(), WithinAbs(c.a_perpendicular_khz(), 1e-6));
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("inversion errors") {
  // phi0 = pi: sin phi0 vanishes
  CHECK_THROWS_AS(invert_hyperfine(250, 300, 20, 4.0), InversionUndefinedError);
  try {
    invert_hyperfine(50, 60, 0.5, 3.0);
    FAIL("expected InconsistentInputsError");
  } catch (const InconsistentInputsError &e) {
    CHECK(e.radicand() < 0);
  }
}

TEST_CASE("closed-form dip agrees with the simulator") {
  const NuclearSpin n(Species::kCarbon13, HyperfineCoupling(-226.2, 242.8));
  const SpinRegister reg(4.7, {n});
  const auto f = conditional_precession_frequencies(n, 4.7);
  for (double tau : {0.77, 2.0, 3.72, 5.5})
    for (int pulses : {2, 8, 32}) {
      CHECK_THAT(single_nucleus_dip(n.coupling(), f.f0_khz, f.f1_khz, tau, pulses),
                 WithinAbs(evolve_ideal(reg, cpmg(pulses, tau)), 1e-9));
    }
}

TEST_CASE("dip edge cases") {
  const HyperfineCoupling c(10, 20);
  CHECK_THROWS_AS(evaluate_dip(c, 50, 60, 1.0, 3), DomainError);
  CHECK(evaluate_dip(c, 50, 60, 1.0, 0).p0 == 1.0);
  CHECK(evaluate_dip(HyperfineCoupling(-50, 0), 50, 0, 1, 4).p0 == 1.0);
  // resonant limit uses N^2
  const HyperfineCoupling weak(0.0, 1.0);
  const double f0 = 50.0, f1 = std::hypot(50.0, 1.0);
  const double tau = 1e3 / (2 * f0);
  const auto d = evaluate_dip(weak, f0, f1, tau, 16);
  CHECK(d.p0 < 1.0);
  CHECK(std::isfinite(d.p0));
}

TEST_CASE("printed form can leave the cosine domain") {
  const SpinRegister reg(4.7, {NuclearSpin(Species::kCarbon13, HyperfineCoupling(-226.2, 242.8)),
                               NuclearSpin(Species::kCarbon13, HyperfineCoupling(357.0, 270.2)),
                               NuclearSpin(Species::kCarbon13, HyperfineCoupling(348.2, 248.7))});
  FullSpectrumOptions printed;
  printed.dip = DipForm::kPrinted;
  int domain_errors = 0;
  for (int k = 1; k <= 200; ++k) {
    const double tau = 0.04 * k;
    try {
      full_spectrum_p0(reg, tau, 4, printed);
    } catch (const DomainError &) {
      ++domain_errors;
    }
    CHECK_NOTHROW(full_spectrum_p0(reg, tau, 4));
  }
  CHECK(domain_errors > 0);
}

TEST_CASE("full spectrum normalizations") {
  const SpinRegister one(4.7, {NuclearSpin(Species::kCarbon13, HyperfineCoupling(-226.2, 242.8))});
  FullSpectrumOptions printed;
  printed.product = ProductForm::kPrinted;
  for (double tau : {1.0, 3.72})
    CHECK_THAT(full_spectrum_p0(one, tau, 16), WithinAbs(full_spectrum_p0(one, tau, 16, printed), 1e-15));
  FullSpectrumOptions t2;
  t2.t2_us = 100;
  const double p = full_spectrum_p0(one, 3.72, 16);
  CHECK_THAT(full_spectrum_p0(one, 3.72, 16, t2), WithinAbs(0.5 + (p - 0.5) * std::exp(-16 * 3.72 / 100), 1e-15));
  CHECK(full_spectrum_p0(SpinRegister(4.7, {}), 2.0, 8) == 1.0);

  const std::vector<double> grid = {1.0, 2.0, 4.0};
  const auto s = full_spectrum(one, grid, 16);
  CHECK(s.axis == AxisKind::kInverseTwoTau);
  CHECK(s.x == std::vector<double>{125.0, 250.0, 500.0});
  CHECK(s.number("n_pulses") == 16);
}

TEST_CASE("proton layer field and contrast") {
  // direct SI evaluation
  const double rho = 6e28, d = 6.26e-9;
  const double expect = 1e-7 * 6.62607015e-34 * 42.577e6 * std::sqrt(5 * kPi * rho / (96 * d * d * d)) * 1e9;
  CHECK_THAT(b_rms_nt(rho, 6.26), WithinRel(expect, 1e-12));
  CHECK_THAT(depth_from_b_rms_nm(rho, b_rms_nt(rho, 9.5)), WithinRel(9.5, 1e-12));
  CHECK_THROWS_AS(b_rms_nt(-1, 1), DomainError);

  const double b = 560, fh = 1000;
  const double tau = 0.5;  // (2 tau)^-1 = f_h
  const double phase = 28e9 * b * 1e-9 * 64 * tau * 1e-6;
  CHECK_THAT(proton_contrast(b, fh, 64, tau), WithinRel(std::exp(-8 * phase * phase), 1e-12));
  CHECK(proton_contrast(b, fh, 64, 0.45) > proton_contrast(b, fh, 64, tau));
  CHECK_THROWS_AS(proton_contrast(b, fh, 64, 0.0), DomainError);
}

TEST_CASE("decay models") {
  CHECK_THAT(ramsey_model(0, 0.5, 2, 1.0 / 6, 1.0 / 3, 2.1, 0), WithinAbs(0.0, 1e-15));
  CHECK_THAT(ramsey_model(100, 0.5, 2, 1.0 / 6, 1.0 / 3, 2.1, 0), WithinAbs(0.5, 1e-15));
  CHECK(echo_model(0, 364, 1.06) == 1.0);
  CHECK_THAT(echo_model(182, 364, 1.0), WithinAbs(0.5 * (1 + std::exp(-1.0)), 1e-15));
  for (double z : {0.96, 0.5, 0.123456789})
    for (double eta : {1.18, 3.7})
      CHECK(g2_model(0.0, z, eta, 0.094, 0.012) == 1.0 - z);
  CHECK(g2_model(-40, 0.96, 1.18, 0.094, 0.012) == g2_model(40, 0.96, 1.18, 0.094, 0.012));
  CHECK_THAT(g2_model(1e5, 0.96, 1.18, 0.094, 0.012), WithinAbs(1.0, 1e-12));
}
