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

#include "fairlens/core/cross_validation.h"

#include <algorithm>
#include <cmath>

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"

namespace fairlens {

Folds stratified_folds_by_class(std::span<const uint32_t> classes, size_t k,
                                uint64_t seed) {
  if (k < 2) throw Error("cross-validation needs k >= 2");
  if (k > classes.size()) {
    throw Error("k = " + std::to_string(k) + " exceeds the " +
                std::to_string(classes.size()) + " available rows");
  }
  uint32_t num_classes = 0;
  for (const uint32_t c : classes) num_classes = std::max(num_classes, c + 1);
  std::vector<std::vector<size_t>> members(num_classes);
  for (size_t i = 0; i < classes.size(); ++i) members[classes[i]].push_back(i);
  Rng rng(derive_seed(seed, "cv-folds"));
  for (auto& m : members) rng.shuffle(std::span<size_t>(m));
  Folds folds(k);
  size_t j = 0;
  for (const auto& m : members) {
    for (const size_t i : m) folds[j++ % k].push_back(i);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

Folds stratified_folds(std::span<const uint8_t> labels, size_t k,
                       uint64_t seed) {
  // Positives are dealt first.
  std::vector<uint32_t> classes(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) classes[i] = labels[i] ? 0 : 1;
  return stratified_folds_by_class(classes, k, seed);
}

TrainTestSplit stratified_split(std::span<const uint8_t> labels,
                                double test_fraction, uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error("test fraction must lie in (0, 1)");
  }
  std::vector<size_t> pos;
  std::vector<size_t> neg;
  for (size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? pos : neg).push_back(i);
  }
  Rng rng(derive_seed(seed, "train-test-split"));
  rng.shuffle(std::span<size_t>(pos));
  rng.shuffle(std::span<size_t>(neg));
  TrainTestSplit split;
  for (const auto* cls : {&pos, &neg}) {
    const auto held = static_cast<size_t>(
        std::llround(test_fraction * static_cast<double>(cls->size())));
    for (size_t i = 0; i < cls->size(); ++i) {
      (i < held ? split.test : split.train).push_back((*cls)[i]);
    }
  }
  if (split.train.empty() || split.test.empty()) {
    throw Error("train/test split leaves one side empty");
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<double> out_of_fold_scores(const TabularDataset& dataset,
                                       const Folds& folds,
                                       const ForestParams& params,
                                       uint64_t seed) {
  std::vector<double> scores(dataset.rows(), -1.0);
  std::vector<uint8_t> held(dataset.rows(), 0);
  for (size_t f = 0; f < folds.size(); ++f) {
    for (const size_t i : folds[f]) held[i] = static_cast<uint8_t>(f + 1);
  }
  for (size_t f = 0; f < folds.size(); ++f) {
    std::vector<size_t> train;
    train.reserve(dataset.rows() - folds[f].size());
    for (size_t i = 0; i < dataset.rows(); ++i) {
      if (held[i] != f + 1) train.push_back(i);
    }
    if (train.empty()) throw Error("a fold leaves no training rows");
    const RandomForest model = train_random_forest(
        dataset.subset(train), params, derive_seed(seed, 1000 + f));
    const TabularDataset test = dataset.subset(folds[f]);
    std::vector<double> fold_scores(test.rows());
    model.score_batch(test.matrix(), fold_scores);
    for (size_t t = 0; t < folds[f].size(); ++t) {
      scores[folds[f][t]] = fold_scores[t];
    }
  }
  return scores;
}

std::vector<FoldMetrics> fold_metrics(std::span<const double> scores,
                                      std::span<const uint8_t> labels,
                                      const Folds& folds, double threshold) {
  std::vector<FoldMetrics> out;
  out.reserve(folds.size());
  for (size_t f = 0; f < folds.size(); ++f) {
    std::vector<double> s;
    std::vector<uint8_t> l;
    for (const size_t i : folds[f]) {
      s.push_back(scores[i]);
      l.push_back(labels[i]);
    }
    FoldMetrics m;
    m.fold = f;
    m.counts = count_confusion(s, l, threshold);
    m.tpr = m.counts.tpr();
    m.tnr = m.counts.tnr();
    m.accuracy = m.counts.accuracy().value_or(0.0);
    m.held_out = folds[f];
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<FoldMetrics> k_fold_cross_validate(const TabularDataset& dataset,
                                               size_t k,
                                               const ForestParams& params,
                                               uint64_t seed,
                                               double threshold) {
  if (dataset.empty()) throw Error("empty training set");
  const Folds folds = stratified_folds(dataset.labels(), k, seed);
  const std::vector<double> scores =
      out_of_fold_scores(dataset, folds, params, seed);
  return fold_metrics(scores, dataset.labels(), folds, threshold);
}

}  // namespace fairlens
