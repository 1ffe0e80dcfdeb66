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

#ifndef NVSENSE_REGISTER_IO_HPP_
#define NVSENSE_REGISTER_IO_HPP_

#include <string>

#include "json.hpp"
#include "nvsense/physics.hpp"

namespace nvsense {

// Register files are JSON objects:
//   {"schema": "nvsense.register/1", "b0_mT": 4.7,
//    "nuclei": [{"species": "c13", "a_par_kHz": -226.2, "a_perp_kHz": 242.8,
//                "gamma_kHz_per_mT": 10.705}],
//    "nitrogen_mixture": [{"detuning_MHz": -2.16, "weight": 0.3333}, ...]}
// gamma_kHz_per_mT is optional for known species and required for "custom".
inline constexpr const char *kRegisterSchema = "nvsense.register/1";

nlohmann::json register_to_json(const SpinRegister &reg);
SpinRegister register_from_json(const nlohmann::json &j);

SpinRegister load_register(const std::string &path);
void save_register(const SpinRegister &reg, const std::string &path);

// 16 hex digits of FNV-1a over the canonical JSON form.
std::string register_hash(const SpinRegister &reg);

std::string fnv1a_hex(const std::string &bytes);

}  // namespace nvsense

#endif  // NVSENSE_REGISTER_IO_HPP_
