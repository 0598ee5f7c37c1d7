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

#ifndef FAIRLENS_CORE_METRICS_H_
#define FAIRLENS_CORE_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace fairlens {

enum class Metric { kTpr, kTnr, kAccuracy };

std::string_view metric_name(Metric metric);     // "TPR", "TNR", "accuracy"
Metric parse_metric(std::string_view name);      // throws on unknown names

struct ConfusionCounts {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t tn = 0;
  uint64_t fn = 0;

  uint64_t support() const { return tp + fp + tn + fn; }
  uint64_t positives() const { return tp + fn; }
  uint64_t negatives() const { return tn + fp; }

  // Undefined (nullopt) when the denominator is zero, never 0/0.
  std::optional<double> tpr() const;
  std::optional<double> tnr() const;
  std::optional<double> accuracy() const;
  std::optional<double> outcome_rate() const;
  std::optional<double> get(Metric metric) const;

  ConfusionCounts& operator+=(const ConfusionCounts& other);
  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts count_confusion(std::span<const double> scores,
                                std::span<const uint8_t> labels,
                                double threshold);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_METRICS_H_
