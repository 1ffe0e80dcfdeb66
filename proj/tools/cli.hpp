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


#ifndef NVSENSE_TOOLS_CLI_HPP_
#define NVSENSE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace nvsense::cli {

inline constexpr const char *kToolVersion = "0.1.0";

// Runs one invocation. args excludes the program name. Exit codes: 0
// success (including converged = false analyses), 2 usage or domain error,
// 1 internal error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nvsense::cli

#endif  // NVSENSE_TOOLS_CLI_HPP_
