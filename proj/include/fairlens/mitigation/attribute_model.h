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

#ifndef FAIRLENS_MITIGATION_ATTRIBUTE_MODEL_H_
#define FAIRLENS_MITIGATION_ATTRIBUTE_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/json_util.h"
#include "fairlens/core/oracle.h"
#include "fairlens/core/random_forest.h"

namespace fairlens::mitigation {

// Indicator column name for one category, e.g. "gender=F".
std::string indicator_name(const std::string& attribute,
                           const std::string& category);

// Appends one 0/1 indicator per declared category (unspecified included).
// Every row gets exactly one indicator set.
TabularDataset one_hot_encode_groups(const TabularDataset& dataset);

// Forest over the original features plus the group indicators.
class AttributeAwareModel : public PredictionOracle {
 public:
  AttributeAwareModel(RandomForest forest, std::string attribute,
                      CategorySet categories);

  // `features` is the augmented vector: base features, then indicators.
  // Throws unless the indicators form a valid one-hot block.
  double score(std::span<const double> features) const override;
  void score_batch(const MatrixView& rows, std::span<double> out) const override;
  // Encodes the dataset's group column, then scores.
  std::vector<double> score_dataset(const TabularDataset& dataset) const override;
  const OracleInfo& info() const override { return forest_.info(); }

  const RandomForest& forest() const { return forest_; }
  const std::string& attribute() const { return attribute_; }
  const CategorySet& categories() const { return categories_; }
  size_t base_features() const;

 private:
  RandomForest forest_;
  std::string attribute_;
  CategorySet categories_;
};

AttributeAwareModel train_with_attribute(const TabularDataset& dataset,
                                         const ForestParams& params,
                                         uint64_t seed);

Json attribute_model_to_json(const AttributeAwareModel& model);
AttributeAwareModel attribute_model_from_json(const Json& value,
                                              const std::string& pointer);

}  // namespace fairlens::mitigation

#endif  // FAIRLENS_MITIGATION_ATTRIBUTE_MODEL_H_
