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

#include "fairlens/core/random_forest.h"

#include <algorithm>
#include <utility>

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"
#include "fairlens/simd/kernels.h"

namespace fairlens {

void ForestParams::validate() const {
  if (num_trees < 1) throw Error("a forest needs at least one tree");
  tree.validate();
}

RandomForest::RandomForest(std::vector<DecisionTree> trees,
                           ForestParams params, uint64_t seed,
                           OracleInfo info)
    : trees_(std::move(trees)),
      params_(params),
      seed_(seed),
      info_(std::move(info)) {
  if (trees_.empty()) throw Error("a forest needs at least one tree");
  for (const auto& t : trees_) {
    if (t.info().feature_names != info_.feature_names) {
      throw Error("forest trees disagree on feature names");
    }
  }
}

double RandomForest::score(std::span<const double> features) const {
  double total = 0.0;
  for (const auto& t : trees_) total += t.score(features);
  return total / static_cast<double>(trees_.size());
}

void RandomForest::score_batch(const MatrixView& rows,
                               std::span<double> out) const {
  // Same per-row summation order as score(), so both paths agree exactly.
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> tree_scores(rows.rows);
  for (const auto& t : trees_) {
    t.score_batch(rows, tree_scores);
    simd::add_inplace(out, tree_scores);
  }
  const auto count = static_cast<double>(trees_.size());
  for (double& v : out) v /= count;
}

void RandomForest::set_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error("decision threshold must lie in (0, 1]");
  }
  info_.threshold = threshold;
}

RandomForest train_random_forest(const TabularDataset& dataset,
                                 const ForestParams& params, uint64_t seed) {
  params.validate();
  if (dataset.empty()) throw Error("empty training set");
  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<size_t>(params.num_trees));
  for (int i = 0; i < params.num_trees; ++i) {
    trees.push_back(train_decision_tree(
        dataset, params.tree, derive_seed(seed, static_cast<uint64_t>(i))));
  }
  return RandomForest(std::move(trees), params, seed,
                      OracleInfo{"random_forest", dataset.feature_names(), 0.5});
}

}  // namespace fairlens
