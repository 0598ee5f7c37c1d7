/*
 * Copyright 2026 The Fairlens Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FAIRLENS_CLI_CLI_H_
#define FAIRLENS_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace fairlens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBiasFound = 2;

// Entry point behind the fairlens binary. `args` excludes the program name.
// Exit codes: 0 success, 1 validation or input error, 2 tolerance exceeded
// with --fail-on-bias.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fairlens::cli

#endif  // FAIRLENS_CLI_CLI_H_
