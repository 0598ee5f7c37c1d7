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

#ifndef FAIRLENS_CORE_IO_H_
#define FAIRLENS_CORE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace fairlens {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// printf-style %.{digits}g, with "-0" normalised to "0".
std::string format_double(double value, int significant_digits);

// 0.537 -> "53.7%" with the given number of decimals.
std::string format_percent(double fraction, int decimals = 1);

// Rounds to the given number of significant digits.
double round_significant(double value, int significant_digits);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_IO_H_
