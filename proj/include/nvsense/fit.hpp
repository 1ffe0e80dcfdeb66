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


#ifndef NVSENSE_FIT_HPP_
#define NVSENSE_FIT_HPP_

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nvsense/fit_result.hpp"

namespace nvsense {

struct FitParameter {
  std::string name;
  double initial = 0.0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool fixed = false;
};

// y = model(x, params) with params in FitProblem order.
using ModelFn = std::function<double(double, std::span<const double>)>;

struct FitOptions {
  int max_iterations = 200;
  double rss_tolerance = 1e-14;   // relative decrease ending the search
  double step_tolerance = 1e-12;  // relative parameter step ending the search
  double fd_relative_step = 1e-6;
};

struct FitProblem {
  ModelFn model;
  std::vector<FitParameter> params;
  std::vector<double> x;
  std::vector<double> y;
  FitOptions options;

  // Free count <= data count, lower <= initial <= upper, finite data.
  void validate() const;
};

// Levenberg-Marquardt with Marquardt diagonal scaling, box constraints by
// projection and a central-difference Jacobian. Uncertainties are
// sqrt(diag(s^2 (J^T J)^-1)) with s^2 = RSS / (m - n_free), zero when the
// data leave no degrees of freedom.
FitResult fit(const FitProblem &problem);

// Residual sum of squares of the model at the given parameters.
double residual_sum_of_squares(const FitProblem &problem, std::span<const double> params);

}  // namespace nvsense

#endif  // NVSENSE_FIT_HPP_
