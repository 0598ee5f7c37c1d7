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

#include "fairlens/core/metrics.h"

#include "fairlens/core/error.h"
#include "fairlens/simd/kernels.h"

namespace fairlens {
namespace {

std::optional<double> ratio(uint64_t num, uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::kTpr:
      return "TPR";
    case Metric::kTnr:
      return "TNR";
    case Metric::kAccuracy:
      return "accuracy";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  if (name == "TPR" || name == "tpr") return Metric::kTpr;
  if (name == "TNR" || name == "tnr") return Metric::kTnr;
  if (name == "accuracy") return Metric::kAccuracy;
  throw Error("unknown metric '" + std::string(name) + "'");
}

std::optional<double> ConfusionCounts::tpr() const { return ratio(tp, tp + fn); }
std::optional<double> ConfusionCounts::tnr() const { return ratio(tn, tn + fp); }
std::optional<double> ConfusionCounts::accuracy() const {
  return ratio(tp + tn, support());
}
std::optional<double> ConfusionCounts::outcome_rate() const {
  return ratio(tp + fn, support());
}

std::optional<double> ConfusionCounts::get(Metric metric) const {
  switch (metric) {
    case Metric::kTpr:
      return tpr();
    case Metric::kTnr:
      return tnr();
    case Metric::kAccuracy:
      return accuracy();
  }
  return std::nullopt;
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  return *this;
}

ConfusionCounts count_confusion(std::span<const double> scores,
                                std::span<const uint8_t> labels,
                                double threshold) {
  if (scores.size() != labels.size()) {
    throw Error("score and label counts differ");
  }
  const simd::ConfusionTally t = simd::confusion(scores, labels, threshold);
  return {t.tp, t.fp, t.tn, t.fn};
}

}  // namespace fairlens
