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

#include "fairlens/core/csv.h"

#include <charconv>
#include <cmath>
#include <map>

#include "fairlens/core/error.h"
#include "fairlens/core/io.h"

namespace fairlens {
namespace {

double parse_number(const std::string& field, size_t line,
                    const std::string& column) {
  const auto fail = [&](const std::string& why) {
    return Error("line " + std::to_string(line) + ", column '" + column +
                 "': " + why);
  };
  if (field.empty()) throw fail("missing value");
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) throw fail("'" + field + "' is not a number");
  if (!std::isfinite(v)) throw fail("non-finite value");
  return v;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  size_t i = 0;
  const auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (field_started || !field.empty() || !record.empty()) end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
    ++i;
  }
  if (in_quotes) throw Error("unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

TabularDataset parse_dataset_csv(std::string_view text,
                                 const CsvSchema& schema) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw Error("CSV has no header row");
  const auto& header = records.front();

  std::map<std::string, size_t> column_of;
  for (size_t j = 0; j < header.size(); ++j) {
    if (!column_of.emplace(header[j], j).second) {
      throw Error("duplicate column '" + header[j] + "'");
    }
  }
  const auto locate = [&](const std::string& name) {
    const auto it = column_of.find(name);
    if (it == column_of.end()) throw Error("column '" + name + "' not found");
    return it->second;
  };
  const size_t label_col = locate(schema.label_column);
  std::optional<size_t> group_col;
  std::optional<CategorySet> categories;
  if (schema.group_column) {
    group_col = locate(*schema.group_column);
    categories = CategorySet(schema.categories, schema.unspecified);
  }

  std::vector<std::string> feature_names;
  std::vector<size_t> feature_cols;
  for (size_t j = 0; j < header.size(); ++j) {
    if (j == label_col || (group_col && j == *group_col)) continue;
    feature_names.push_back(header[j]);
    feature_cols.push_back(j);
  }

  const size_t n = records.size() - 1;
  std::vector<double> values;
  values.reserve(n * feature_cols.size());
  std::vector<uint8_t> labels;
  labels.reserve(n);
  std::optional<GroupColumn> groups;
  if (group_col) groups = GroupColumn{*schema.group_column, *categories, {}};

  for (size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const size_t line = r + 1;
    if (rec.size() != header.size()) {
      throw Error("line " + std::to_string(line) + ": expected " +
                  std::to_string(header.size()) + " fields, found " +
                  std::to_string(rec.size()));
    }
    for (const size_t j : feature_cols) {
      values.push_back(parse_number(rec[j], line, header[j]));
    }
    const std::string& label = rec[label_col];
    if (label == "0") {
      labels.push_back(0);
    } else if (label == "1") {
      labels.push_back(1);
    } else {
      throw Error("line " + std::to_string(line) + ", column '" +
                  schema.label_column + "': label must be 0 or 1, found '" +
                  label + "'");
    }
    if (groups) {
      const std::string& g = rec[*group_col];
      if (g.empty()) {
        groups->codes.push_back(groups->categories.unspecified());
      } else if (auto code = groups->categories.find(g)) {
        groups->codes.push_back(*code);
      } else {
        throw Error("line " + std::to_string(line) + ", column '" +
                    *schema.group_column + "': undeclared category '" + g +
                    "'");
      }
    }
  }
  return TabularDataset(std::move(feature_names), std::move(values),
                        std::move(labels), std::move(groups));
}

TabularDataset read_dataset_csv(const std::filesystem::path& path,
                                const CsvSchema& schema) {
  try {
    return parse_dataset_csv(read_file(path), schema);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string dataset_to_csv(const TabularDataset& dataset,
                           const CsvSchema& schema) {
  std::string out;
  for (const auto& name : dataset.feature_names()) {
    out += csv_escape(name);
    out += ',';
  }
  out += csv_escape(schema.label_column);
  const bool with_groups = schema.group_column && dataset.has_groups();
  if (with_groups) {
    out += ',';
    out += csv_escape(*schema.group_column);
  }
  out += '\n';
  for (size_t i = 0; i < dataset.rows(); ++i) {
    for (const double v : dataset.row(i)) {
      out += format_double(v, 17);
      out += ',';
    }
    out += dataset.labels()[i] ? '1' : '0';
    if (with_groups) {
      const auto& g = dataset.groups();
      out += ',';
      out += csv_escape(g.categories.name(g.codes[i]));
    }
    out += '\n';
  }
  return out;
}

void write_dataset_csv(const TabularDataset& dataset, const CsvSchema& schema,
                       const std::filesystem::path& path) {
  write_file_atomic(path, dataset_to_csv(dataset, schema));
}

}  // namespace fairlens
