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

#include "nvsense/register_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nvsense/errors.hpp"

namespace nvsense {

using nlohmann::json;

json register_to_json(const SpinRegister &reg) {
  json j;
  j["schema"] = kRegisterSchema;
  j["b0_mT"] = reg.b0_mt();
  j["nuclei"] = json::array();
  for (const auto &n : reg.nuclei()) {
    json e;
    e["species"] = species_name(n.species());
    e["gamma_kHz_per_mT"] = n.gamma_khz_per_mt();
    e["a_par_kHz"] = n.coupling().a_parallel_khz();
    e["a_perp_kHz"] = n.coupling().a_perpendicular_khz();
    j["nuclei"].push_back(e);
  }
  j["nitrogen_mixture"] = json::array();
  for (const auto &c : reg.nitrogen_mixture())
    j["nitrogen_mixture"].push_back({{"detuning_MHz", c.detuning_mhz}, {"weight", c.weight}});
  return j;
}

SpinRegister register_from_json(const json &j) {
  try {
    if (!j.is_object()) throw DomainError("register description must be a JSON object");
    if (j.value("schema", std::string()) != kRegisterSchema)
      throw DomainError(std::string("register schema tag must be '") + kRegisterSchema + "'");
    const double b0 = j.at("b0_mT").get<double>();
    std::vector<NuclearSpin> nuclei;
    if (j.contains("nuclei")) {
      for (const auto &e : j.at("nuclei")) {
        const Species sp = species_from_name(e.at("species").get<std::string>());
        HyperfineCoupling c(e.value("a_par_kHz", 0.0), e.value("a_perp_kHz", 0.0));
        if (e.contains("gamma_kHz_per_mT"))
          nuclei.emplace_back(sp, e.at("gamma_kHz_per_mT").get<double>(), c);
        else if (sp == Species::kCustom)
          throw DomainError("custom species requires gamma_kHz_per_mT");
        else
          nuclei.emplace_back(sp, c);
      }
    }
    std::vector<DetuningComponent> mix;
    if (j.contains("nitrogen_mixture")) {
      for (const auto &e : j.at("nitrogen_mixture"))
        mix.push_back({e.at("detuning_MHz").get<double>(), e.at("weight").get<double>()});
    }
    return SpinRegister(b0, std::move(nuclei), std::move(mix));
  } catch (const json::exception &e) {
    throw DomainError(std::string("malformed register description: ") + e.what());
  }
}

SpinRegister load_register(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open register file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw DomainError("register file '" + path + "': " + e.what());
  }
  return register_from_json(j);
}

void save_register(const SpinRegister &reg, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write register file '" + path + "'");
  out << register_to_json(reg).dump(2) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string fnv1a_hex(const std::string &bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string register_hash(const SpinRegister &reg) {
  return fnv1a_hex(register_to_json(reg).dump());
}

}  // namespace nvsense
