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

#include "fairlens/mitigation/attribute_model.h"

#include "fairlens/core/error.h"
#include "fairlens/core/model_io.h"
#include "fairlens/core/rng.h"

namespace fairlens::mitigation {
namespace {

void check_one_hot(std::span<const double> indicators) {
  int ones = 0;
  for (const double v : indicators) {
    if (v == 1.0) {
      ++ones;
    } else if (v != 0.0) {
      throw Error("group indicators must be 0 or 1");
    }
  }
  if (ones != 1) {
    throw Error("group indicators must have exactly one category set");
  }
}

}  // namespace

std::string indicator_name(const std::string& attribute,
                           const std::string& category) {
  return attribute + "=" + category;
}

TabularDataset one_hot_encode_groups(const TabularDataset& dataset) {
  const GroupColumn& column = dataset.groups();
  const size_t p = dataset.features();
  const size_t c = column.categories.size();
  std::vector<std::string> names = dataset.feature_names();
  for (const auto& cat : column.categories.names()) {
    names.push_back(indicator_name(column.name, cat));
  }
  std::vector<double> values;
  values.reserve(dataset.rows() * (p + c));
  for (size_t i = 0; i < dataset.rows(); ++i) {
    const auto r = dataset.row(i);
    values.insert(values.end(), r.begin(), r.end());
    for (size_t k = 0; k < c; ++k) {
      values.push_back(column.codes[i] == k ? 1.0 : 0.0);
    }
  }
  return TabularDataset(std::move(names), std::move(values), dataset.labels(),
                        column);
}

AttributeAwareModel::AttributeAwareModel(RandomForest forest,
                                         std::string attribute,
                                         CategorySet categories)
    : forest_(std::move(forest)),
      attribute_(std::move(attribute)),
      categories_(std::move(categories)) {
  const auto& names = forest_.info().feature_names;
  if (names.size() <= categories_.size()) {
    throw Error("attribute-aware model is missing base features");
  }
  const size_t base = names.size() - categories_.size();
  for (size_t k = 0; k < categories_.size(); ++k) {
    if (names[base + k] != indicator_name(attribute_, categories_.names()[k])) {
      throw Error("attribute-aware model indicator columns are malformed");
    }
  }
}

size_t AttributeAwareModel::base_features() const {
  return forest_.info().feature_names.size() - categories_.size();
}

double AttributeAwareModel::score(std::span<const double> features) const {
  if (features.size() != forest_.info().feature_names.size()) {
    throw Error("feature vector has the wrong length");
  }
  check_one_hot(features.subspan(base_features()));
  return forest_.score(features);
}

void AttributeAwareModel::score_batch(const MatrixView& rows,
                                      std::span<double> out) const {
  for (size_t i = 0; i < rows.rows; ++i) {
    check_one_hot(rows.row(i).subspan(base_features()));
  }
  forest_.score_batch(rows, out);
}

std::vector<double> AttributeAwareModel::score_dataset(
    const TabularDataset& dataset) const {
  const GroupColumn& column = dataset.groups();
  if (column.name != attribute_ || !(column.categories == categories_)) {
    throw Error("dataset group attribute does not match the model encoding");
  }
  return PredictionOracle::score_dataset(one_hot_encode_groups(dataset));
}

AttributeAwareModel train_with_attribute(const TabularDataset& dataset,
                                         const ForestParams& params,
                                         uint64_t seed) {
  const GroupColumn& column = dataset.groups();
  const TabularDataset encoded = one_hot_encode_groups(dataset);
  return AttributeAwareModel(
      train_random_forest(encoded, params, derive_seed(seed, "with-attribute")),
      column.name, column.categories);
}

Json attribute_model_to_json(const AttributeAwareModel& model) {
  return Json{{"kind", "attribute_aware"},
              {"attribute", model.attribute()},
              {"categories", model.categories().names()},
              {"unspecified",
               model.categories().name(model.categories().unspecified())},
              {"model", forest_to_json(model.forest())}};
}

AttributeAwareModel attribute_model_from_json(const Json& value,
                                              const std::string& pointer) {
  StrictObject obj(value, pointer);
  if (obj.string("kind") != "attribute_aware") {
    throw JsonSchemaError(obj.child_pointer("kind"),
                          "expected \"attribute_aware\"");
  }
  const std::string attribute = obj.string("attribute");
  std::vector<std::string> cats;
  const Json& arr = json_array(obj.at("categories"), obj.child_pointer("categories"));
  for (const auto& c : arr) cats.push_back(json_string(c, obj.child_pointer("categories")));
  const std::string unspecified = obj.string("unspecified");
  RandomForest forest = forest_from_json(obj.at("model"), obj.child_pointer("model"));
  obj.finish();
  return AttributeAwareModel(std::move(forest), attribute,
                             CategorySet(std::move(cats), unspecified));
}

}  // namespace fairlens::mitigation
