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

#include "fairlens/core/dataset.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "fairlens/core/error.h"

namespace fairlens {

CategorySet::CategorySet(std::vector<std::string> names,
                         std::string unspecified)
    : names_(std::move(names)) {
  if (names_.empty()) throw Error("category set is empty");
  if (names_.size() > 0xffff) throw Error("too many categories");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error("category names must be non-empty");
    if (!seen.insert(n).second) throw Error("duplicate category '" + n + "'");
  }
  const auto it = std::find(names_.begin(), names_.end(), unspecified);
  if (it == names_.end()) {
    throw Error("unspecified category '" + unspecified +
                "' is not in the category set");
  }
  unspecified_ = static_cast<GroupCode>(it - names_.begin());
}

std::optional<GroupCode> CategorySet::find(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<GroupCode>(it - names_.begin());
}

GroupCode CategorySet::code(const std::string& name) const {
  if (auto c = find(name)) return *c;
  throw Error("unknown category '" + name + "'");
}

TabularDataset::TabularDataset(std::vector<std::string> feature_names,
                               std::vector<double> values,
                               std::vector<uint8_t> labels,
                               std::optional<GroupColumn> groups)
    : feature_names_(std::move(feature_names)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      groups_(std::move(groups)) {
  if (values_.size() != labels_.size() * feature_names_.size()) {
    throw Error("feature matrix shape does not match row and feature counts");
  }
  std::set<std::string> seen;
  for (const auto& n : feature_names_) {
    if (!seen.insert(n).second) throw Error("duplicate feature '" + n + "'");
  }
  for (const double v : values_) {
    if (!std::isfinite(v)) throw Error("feature values must be finite");
  }
  for (const uint8_t l : labels_) {
    if (l > 1) throw Error("labels must be 0 or 1");
  }
  if (groups_) {
    if (groups_->codes.size() != labels_.size()) {
      throw Error("group column length does not match row count");
    }
    for (const GroupCode c : groups_->codes) {
      if (c >= groups_->categories.size()) {
        throw Error("group value outside the declared category set");
      }
    }
  }
}

std::optional<size_t> TabularDataset::find_feature(
    const std::string& name) const {
  const auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  if (it == feature_names_.end()) return std::nullopt;
  return static_cast<size_t>(it - feature_names_.begin());
}

size_t TabularDataset::feature_index(const std::string& name) const {
  if (auto i = find_feature(name)) return *i;
  throw Error("unknown feature '" + name + "'");
}

std::vector<double> TabularDataset::column(size_t col) const {
  std::vector<double> out(rows());
  for (size_t i = 0; i < rows(); ++i) out[i] = at(i, col);
  return out;
}

size_t TabularDataset::positives() const {
  return static_cast<size_t>(std::count(labels_.begin(), labels_.end(), 1));
}

const GroupColumn& TabularDataset::groups() const {
  if (!groups_) throw Error("no protected attribute declared");
  return *groups_;
}

TabularDataset TabularDataset::subset(std::span<const size_t> indices) const {
  const size_t p = features();
  std::vector<double> values;
  values.reserve(indices.size() * p);
  std::vector<uint8_t> labels;
  labels.reserve(indices.size());
  std::optional<GroupColumn> groups;
  if (groups_) {
    groups = GroupColumn{groups_->name, groups_->categories, {}};
    groups->codes.reserve(indices.size());
  }
  for (const size_t i : indices) {
    if (i >= rows()) throw Error("row index out of range");
    const auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
    if (groups) groups->codes.push_back(groups_->codes[i]);
  }
  return TabularDataset(feature_names_, std::move(values), std::move(labels),
                        std::move(groups));
}

TabularDataset TabularDataset::without_feature(const std::string& name) const {
  const size_t drop = feature_index(name);
  if (features() < 2) throw Error("cannot remove the only feature");
  std::vector<std::string> names;
  for (size_t j = 0; j < features(); ++j) {
    if (j != drop) names.push_back(feature_names_[j]);
  }
  std::vector<double> values;
  values.reserve(rows() * names.size());
  for (size_t i = 0; i < rows(); ++i) {
    for (size_t j = 0; j < features(); ++j) {
      if (j != drop) values.push_back(at(i, j));
    }
  }
  return TabularDataset(std::move(names), std::move(values), labels_, groups_);
}

TabularDataset TabularDataset::with_labels(std::vector<uint8_t> labels) const {
  return TabularDataset(feature_names_, values_, std::move(labels), groups_);
}

TabularDataset TabularDataset::with_groups(
    std::optional<GroupColumn> groups) const {
  return TabularDataset(feature_names_, values_, labels_, std::move(groups));
}

TabularDataset TabularDataset::with_feature_value(size_t col,
                                                  double value) const {
  if (col >= features()) throw Error("feature index out of range");
  if (!std::isfinite(value)) throw Error("feature values must be finite");
  TabularDataset copy = *this;
  for (size_t i = 0; i < rows(); ++i) copy.values_[i * features() + col] = value;
  return copy;
}

std::vector<std::vector<size_t>> rows_by_group(const TabularDataset& dataset) {
  const GroupColumn& g = dataset.groups();
  std::vector<std::vector<size_t>> out(g.categories.size());
  for (size_t i = 0; i < g.codes.size(); ++i) out[g.codes[i]].push_back(i);
  return out;
}

}  // namespace fairlens
