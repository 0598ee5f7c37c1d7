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

#ifndef FAIRLENS_CORE_RANDOM_FOREST_H_
#define FAIRLENS_CORE_RANDOM_FOREST_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/decision_tree.h"
#include "fairlens/core/oracle.h"

namespace fairlens {

struct ForestParams {
  int num_trees = 50;
  TreeParams tree{.max_depth = 8,
                  .min_leaf = 40,
                  .feature_fraction = 0.5,
                  .bootstrap = true};

  void validate() const;
};

// Bagged CART trees. The score is the arithmetic mean of the tree scores.
class RandomForest : public PredictionOracle {
 public:
  RandomForest(std::vector<DecisionTree> trees, ForestParams params,
               uint64_t seed, OracleInfo info);

  double score(std::span<const double> features) const override;
  void score_batch(const MatrixView& rows, std::span<double> out) const override;
  const OracleInfo& info() const override { return info_; }

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const ForestParams& params() const { return params_; }
  uint64_t seed() const { return seed_; }
  void set_threshold(double threshold);

 private:
  std::vector<DecisionTree> trees_;
  ForestParams params_;
  uint64_t seed_;
  OracleInfo info_;
};

// Tree i is train_decision_tree(dataset, params.tree, derive_seed(seed, i)).
RandomForest train_random_forest(const TabularDataset& dataset,
                                 const ForestParams& params, uint64_t seed);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_RANDOM_FOREST_H_
