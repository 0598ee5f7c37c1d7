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

#ifndef FAIRLENS_CORE_CSV_H_
#define FAIRLENS_CORE_CSV_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/core/dataset.h"

namespace fairlens {

// Column roles are declared, never inferred: one 0/1 label column, an
// optional categorical group column, and every other column numeric.
struct CsvSchema {
  std::string label_column;
  std::optional<std::string> group_column;
  std::vector<std::string> categories;
  std::string unspecified;
};

// RFC 4180-ish: comma separated, double-quoted fields may contain commas,
// quotes ("") and newlines.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

TabularDataset parse_dataset_csv(std::string_view text, const CsvSchema& schema);
TabularDataset read_dataset_csv(const std::filesystem::path& path,
                                const CsvSchema& schema);

// Features in dataset order, then the label column, then the group column.
std::string dataset_to_csv(const TabularDataset& dataset,
                           const CsvSchema& schema);
void write_dataset_csv(const TabularDataset& dataset, const CsvSchema& schema,
                       const std::filesystem::path& path);

std::string csv_escape(std::string_view field);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_CSV_H_
