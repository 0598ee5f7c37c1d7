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

#include "fairlens/core/decision_tree.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"

namespace fairlens {
namespace {

using u128 = unsigned __int128;

// Weighted child impurity, kept as an exact fraction num / den so that split
// comparisons (and therefore tie-breaking) are free of rounding.
struct Impurity {
  u128 num = 0;
  u128 den = 1;

  bool operator<(const Impurity& o) const { return num * o.den < o.num * den; }
};

Impurity node_impurity(uint64_t n, uint64_t pos) {
  return {static_cast<u128>(pos) * (n - pos), n};
}

Impurity split_impurity(uint64_t nl, uint64_t pl, uint64_t nr, uint64_t pr) {
  const u128 num = static_cast<u128>(pl) * (nl - pl) * nr +
                   static_cast<u128>(pr) * (nr - pr) * nl;
  return {num, static_cast<u128>(nl) * nr};
}

struct SplitChoice {
  int32_t feature = -1;
  double threshold = 0.0;
  Impurity impurity;
};

class TreeBuilder {
 public:
  TreeBuilder(const TabularDataset& data, const TreeParams& params,
              uint64_t seed)
      : data_(data), params_(params), rng_(seed) {}

  std::vector<TreeNode> build() {
    const size_t n = data_.rows();
    std::vector<size_t> rows(n);
    if (params_.bootstrap) {
      for (auto& r : rows) r = rng_.uniform_index(n);
      std::sort(rows.begin(), rows.end());
    } else {
      std::iota(rows.begin(), rows.end(), size_t{0});
    }
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  int32_t grow(std::span<size_t> rows, int depth) {
    const uint64_t n = rows.size();
    uint64_t pos = 0;
    for (const size_t r : rows) pos += data_.labels()[r];

    const auto self = static_cast<int32_t>(nodes_.size());
    TreeNode node;
    node.count = n;
    node.value = static_cast<double>(pos) / static_cast<double>(n);
    nodes_.push_back(node);

    const uint64_t min_leaf = static_cast<uint64_t>(params_.min_leaf);
    if (depth >= params_.max_depth || pos == 0 || pos == n ||
        n < 2 * min_leaf) {
      return self;
    }
    const SplitChoice best = find_split(rows, pos);
    if (best.feature < 0) return self;

    const auto mid = std::partition(rows.begin(), rows.end(), [&](size_t r) {
      return data_.at(r, best.feature) < best.threshold;
    });
    // Keep each side in ascending row order so the layout does not depend
    // on std::partition internals.
    std::sort(rows.begin(), mid);
    std::sort(mid, rows.end());
    const size_t left_n = static_cast<size_t>(mid - rows.begin());

    const int32_t left = grow(rows.subspan(0, left_n), depth + 1);
    const int32_t right = grow(rows.subspan(left_n), depth + 1);
    TreeNode& parent = nodes_[self];
    parent.feature = best.feature;
    parent.threshold = best.threshold;
    parent.left = left;
    parent.right = right;
    return self;
  }

  std::vector<size_t> candidate_features() {
    const size_t p = data_.features();
    std::vector<size_t> all(p);
    std::iota(all.begin(), all.end(), size_t{0});
    const size_t m = params_.features_per_split(p);
    if (m >= p) return all;
    for (size_t i = 0; i < m; ++i) {
      const size_t j = i + rng_.uniform_index(p - i);
      std::swap(all[i], all[j]);
    }
    all.resize(m);
    std::sort(all.begin(), all.end());
    return all;
  }

  SplitChoice find_split(std::span<const size_t> rows, uint64_t pos) {
    const uint64_t n = rows.size();
    const uint64_t min_leaf = static_cast<uint64_t>(params_.min_leaf);
    SplitChoice best;
    best.impurity = node_impurity(n, pos);  // must beat the parent strictly

    for (const size_t f : candidate_features()) {
      column_.clear();
      for (const size_t r : rows) {
        column_.emplace_back(data_.at(r, f), data_.labels()[r]);
      }
      std::sort(column_.begin(), column_.end());
      uint64_t nl = 0;
      uint64_t pl = 0;
      for (size_t i = 0; i + 1 < column_.size(); ++i) {
        ++nl;
        pl += column_[i].second;
        const double lo = column_[i].first;
        const double hi = column_[i + 1].first;
        if (lo == hi) continue;
        if (nl < min_leaf) continue;
        if (n - nl < min_leaf) break;
        const Impurity imp = split_impurity(nl, pl, n - nl, pos - pl);
        if (imp < best.impurity) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold > lo)) threshold = hi;
          best.feature = static_cast<int32_t>(f);
          best.threshold = threshold;
          best.impurity = imp;
        }
      }
    }
    return best;
  }

  const TabularDataset& data_;
  const TreeParams& params_;
  Rng rng_;
  std::vector<TreeNode> nodes_;
  std::vector<std::pair<double, uint8_t>> column_;
};

}  // namespace

void TreeParams::validate() const {
  if (max_depth < 1) throw Error("max depth must be at least 1");
  if (min_leaf < 1) throw Error("min leaf size must be at least 1");
  if (!(feature_fraction > 0.0 && feature_fraction <= 1.0)) {
    throw Error("feature fraction must lie in (0, 1]");
  }
}

size_t TreeParams::features_per_split(size_t num_features) const {
  const auto m = static_cast<size_t>(
      std::ceil(feature_fraction * static_cast<double>(num_features) - 1e-9));
  return std::clamp<size_t>(m, 1, num_features);
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, OracleInfo info)
    : nodes_(std::move(nodes)), info_(std::move(info)) {
  if (nodes_.empty()) throw Error("a tree needs at least one node");
  const auto n = static_cast<int32_t>(nodes_.size());
  for (int32_t i = 0; i < n; ++i) {
    const TreeNode& node = nodes_[i];
    if (!(node.value >= 0.0 && node.value <= 1.0)) {
      throw Error("tree leaf value outside [0, 1]");
    }
    if (node.is_leaf()) continue;
    if (node.feature >= static_cast<int32_t>(info_.feature_names.size()) ||
        node.left <= i || node.right <= i || node.left >= n ||
        node.right >= n) {
      throw Error("malformed tree node " + std::to_string(i));
    }
  }
}

size_t DecisionTree::leaf_index(std::span<const double> features) const {
  size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    i = static_cast<size_t>(features[node.feature] >= node.threshold
                                ? node.right
                                : node.left);
  }
  return i;
}

double DecisionTree::score(std::span<const double> features) const {
  return nodes_[leaf_index(features)].value;
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  int deepest = 0;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes_[i].is_leaf()) {
      d[nodes_[i].left] = d[i] + 1;
      d[nodes_[i].right] = d[i] + 1;
    }
  }
  return deepest;
}

DecisionTree train_decision_tree(const TabularDataset& dataset,
                                 const TreeParams& params, uint64_t seed) {
  if (dataset.empty()) throw Error("empty training set");
  if (dataset.features() == 0) throw Error("training set has no features");
  params.validate();
  if (dataset.rows() >= (size_t{1} << 24)) {
    throw Error("training sets are limited to 2^24 rows");
  }
  TreeBuilder builder(dataset, params, seed);
  return DecisionTree(builder.build(),
                      OracleInfo{"decision_tree", dataset.feature_names(), 0.5});
}

}  // namespace fairlens
