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

#include "nvsense/rational.hpp"

#include <cmath>
#include <numeric>

#include "nvsense/errors.hpp"

namespace nvsense {

namespace {

using i128 = __int128;

Rational make(i128 num, i128 den) {
  if (den == 0) throw NumericalError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax)
    throw NumericalError("rational arithmetic overflowed 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw NumericalError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::from_double(double v, std::int64_t den) {
  if (!std::isfinite(v)) throw NumericalError("cannot represent non-finite time");
  const double scaled = std::round(v * static_cast<double>(den));
  if (std::abs(scaled) > 9.0e18) throw NumericalError("time out of rational range");
  return Rational(static_cast<std::int64_t>(scaled), den);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational &o) const {
  return make(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
              static_cast<i128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational &o) const { return *this + (-o); }

Rational Rational::operator*(const Rational &o) const {
  return make(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational &o) const {
  return make(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

std::strong_ordering Rational::operator<=>(const Rational &o) const {
  const i128 l = static_cast<i128>(num_) * o.den_;
  const i128 r = static_cast<i128>(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace nvsense
