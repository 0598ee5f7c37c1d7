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

#ifndef FAIRLENS_CORE_DECISION_TREE_H_
#define FAIRLENS_CORE_DECISION_TREE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/oracle.h"

namespace fairlens {

struct TreeParams {
  int max_depth = 16;
  int min_leaf = 1;
  // Share of the features examined at each split, rounded up, at least one.
  double feature_fraction = 1.0;
  // Grow on a bootstrap resample instead of the rows as given.
  bool bootstrap = false;

  void validate() const;
  size_t features_per_split(size_t num_features) const;
};

// Flat node layout. A query goes right iff x[feature] >= threshold.
struct TreeNode {
  int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int32_t left = -1;
  int32_t right = -1;
  double value = 0.0;    // positive-label fraction of the training rows here
  uint64_t count = 0;    // training rows reaching the node (with multiplicity)

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// CART tree with Gini impurity. Leaves score the positive-label fraction of
// the training rows that reached them.
class DecisionTree : public PredictionOracle {
 public:
  DecisionTree(std::vector<TreeNode> nodes, OracleInfo info);

  double score(std::span<const double> features) const override;
  const OracleInfo& info() const override { return info_; }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int depth() const;
  size_t leaf_index(std::span<const double> features) const;

 private:
  std::vector<TreeNode> nodes_;
  OracleInfo info_;
};

// Splits minimise the weighted Gini impurity of the children and are only
// taken when they strictly improve on the parent. Ties go to the lowest
// feature index, then the lowest threshold.
DecisionTree train_decision_tree(const TabularDataset& dataset,
                                 const TreeParams& params, uint64_t seed);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_DECISION_TREE_H_
