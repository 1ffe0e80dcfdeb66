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

#ifndef NVSENSE_ERRORS_HPP_
#define NVSENSE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nvsense {

// Input outside an operation's domain (bad parameter, violated
// precondition). The CLI maps this to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string &what) : std::invalid_argument(what) {}
};

// Register or buffer larger than supported.
class CapacityError : public DomainError {
 public:
  explicit CapacityError(const std::string &what) : DomainError(what) {}
};

// Hyperfine inversion at angles where sin(phi0) sin(phi1) vanishes.
class InversionUndefinedError : public DomainError {
 public:
  explicit InversionUndefinedError(const std::string &what)
      : DomainError(what) {}
};

// Hyperfine inversion whose transverse radicand came out negative.
class InconsistentInputsError : public DomainError {
 public:
  InconsistentInputsError(const std::string &what, double radicand)
      : DomainError(what), radicand_(radicand) {}
  double radicand() const { return radicand_; }

 private:
  double radicand_;
};

// An iterative numerical procedure failed to converge.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

// File could not be read or written. Message carries the path.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace nvsense

#endif  // NVSENSE_ERRORS_HPP_
