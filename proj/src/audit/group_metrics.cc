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

#include "fairlens/audit/group_metrics.h"

#include "fairlens/core/error.h"

namespace fairlens::audit {

const GroupMetrics& GroupMetricsTable::find(const std::string& group) const {
  for (const auto& g : groups) {
    if (g.group == group) return g;
  }
  throw Error("group '" + group + "' is not in the metrics table");
}

std::optional<double> GroupMetricsTable::value(const std::string& group,
                                               Metric metric) const {
  return find(group).get(metric);
}

std::vector<std::string> GroupMetricsTable::group_names() const {
  std::vector<std::string> out;
  for (const auto& g : groups) out.push_back(g.group);
  return out;
}

GroupMetricsTable group_metrics_from_scores(std::span<const double> scores,
                                            const TabularDataset& dataset,
                                            double threshold) {
  const GroupColumn& column = dataset.groups();
  if (scores.size() != dataset.rows()) {
    throw Error("one score per dataset row is required");
  }
  GroupMetricsTable table;
  table.threshold = threshold;
  const auto members = rows_by_group(dataset);
  std::vector<double> s;
  std::vector<uint8_t> l;
  for (size_t c = 0; c < members.size(); ++c) {
    s.clear();
    l.clear();
    for (const size_t i : members[c]) {
      s.push_back(scores[i]);
      l.push_back(dataset.labels()[i]);
    }
    GroupMetrics g{column.categories.name(static_cast<GroupCode>(c)),
                   count_confusion(s, l, threshold)};
    table.overall += g.counts;
    table.groups.push_back(std::move(g));
  }
  return table;
}

GroupMetricsTable compute_group_metrics(const PredictionOracle& oracle,
                                        const TabularDataset& dataset,
                                        double threshold) {
  if (!dataset.has_groups()) throw Error("no protected attribute declared");
  if (dataset.empty()) throw Error("evaluation set is empty");
  const std::vector<double> scores = oracle.score_dataset(dataset);
  return group_metrics_from_scores(scores, dataset, threshold);
}

GroupMetricsTable group_metrics_from_counts(
    const std::vector<std::pair<std::string, ConfusionCounts>>& counts,
    double threshold) {
  GroupMetricsTable table;
  table.threshold = threshold;
  for (const auto& [name, c] : counts) {
    table.groups.push_back({name, c});
    table.overall += c;
  }
  return table;
}

}  // namespace fairlens::audit
