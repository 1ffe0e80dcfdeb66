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

#ifndef NVSENSE_FIT_RESULT_HPP_
#define NVSENSE_FIT_RESULT_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace nvsense {

inline constexpr const char *kFitResultSchema = "nvsense.fit/1";

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> uncertainties;  // 1-sigma from the covariance
  std::vector<bool> fixed;
  std::vector<bool> at_bound;
  double residual_norm = 0.0;  // sqrt of the sum of squared residuals
  int iterations = 0;
  bool converged = false;
  std::string status;
  // Intermediate numbers and inputs the caller wants preserved.
  nlohmann::json provenance = nlohmann::json::object();

  // Throws DomainError for an unknown name.
  double value(const std::string &name) const;
  double uncertainty(const std::string &name) const;
  bool any_at_bound() const;
};

nlohmann::json fit_result_to_json(const FitResult &r);
FitResult fit_result_from_json(const nlohmann::json &j);

}  // namespace nvsense

#endif  // NVSENSE_FIT_RESULT_HPP_
