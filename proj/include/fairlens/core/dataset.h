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

#ifndef FAIRLENS_CORE_DATASET_H_
#define FAIRLENS_CORE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairlens {

using GroupCode = uint16_t;

// Declared values of a categorical group attribute. One entry is the
// "unspecified" value; empty strings in input files map to it.
class CategorySet {
 public:
  CategorySet() = default;
  CategorySet(std::vector<std::string> names, std::string unspecified);

  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(GroupCode code) const { return names_.at(code); }
  GroupCode unspecified() const { return unspecified_; }

  std::optional<GroupCode> find(const std::string& name) const;
  GroupCode code(const std::string& name) const;  // throws when unknown

  bool operator==(const CategorySet&) const = default;

 private:
  std::vector<std::string> names_;
  GroupCode unspecified_ = 0;
};

struct GroupColumn {
  std::string name;
  CategorySet categories;
  std::vector<GroupCode> codes;

  bool operator==(const GroupColumn&) const = default;
};

// Non-owning row-major view of a feature matrix.
struct MatrixView {
  std::span<const double> values;
  size_t rows = 0;
  size_t cols = 0;

  std::span<const double> row(size_t i) const {
    return values.subspan(i * cols, cols);
  }
};

// Numeric features, binary labels and an optional group attribute. Immutable
// once built; every transform returns a new dataset.
class TabularDataset {
 public:
  TabularDataset(std::vector<std::string> feature_names,
                 std::vector<double> values, std::vector<uint8_t> labels,
                 std::optional<GroupColumn> groups = std::nullopt);

  size_t rows() const { return labels_.size(); }
  size_t features() const { return feature_names_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  std::optional<size_t> find_feature(const std::string& name) const;
  size_t feature_index(const std::string& name) const;  // throws when unknown

  std::span<const double> row(size_t i) const {
    return std::span<const double>(values_).subspan(i * features(), features());
  }
  double at(size_t row, size_t col) const {
    return values_[row * features() + col];
  }
  std::vector<double> column(size_t col) const;
  MatrixView matrix() const { return {values_, rows(), features()}; }
  const std::vector<double>& values() const { return values_; }

  const std::vector<uint8_t>& labels() const { return labels_; }
  size_t positives() const;

  bool has_groups() const { return groups_.has_value(); }
  const GroupColumn& groups() const;  // throws "no protected attribute declared"

  TabularDataset subset(std::span<const size_t> indices) const;
  TabularDataset without_feature(const std::string& name) const;
  TabularDataset with_labels(std::vector<uint8_t> labels) const;
  TabularDataset with_groups(std::optional<GroupColumn> groups) const;
  // Same rows with one feature column set to a constant.
  TabularDataset with_feature_value(size_t col, double value) const;

  bool operator==(const TabularDataset&) const = default;

 private:
  std::vector<std::string> feature_names_;
  std::vector<double> values_;
  std::vector<uint8_t> labels_;
  std::optional<GroupColumn> groups_;
};

// Row indices grouped by group code, in ascending row order.
std::vector<std::vector<size_t>> rows_by_group(const TabularDataset& dataset);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_DATASET_H_
