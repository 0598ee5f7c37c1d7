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

#include "fairlens/mitigation/blind_separate.h"

#include <algorithm>
#include <utility>

#include "fairlens/core/error.h"
#include "fairlens/core/model_io.h"
#include "fairlens/core/rng.h"
#include "fairlens/simd/kernels.h"

namespace fairlens::mitigation {

BlindSeparateEnsemble::BlindSeparateEnsemble(
    std::vector<EnsembleMember> members, std::vector<ExcludedGroup> excluded,
    size_t min_group_support)
    : members_(std::move(members)),
      excluded_(std::move(excluded)),
      min_group_support_(min_group_support) {
  if (members_.empty()) throw Error("an ensemble needs at least one member");
  info_ = OracleInfo{"blind_separate_ensemble",
                     members_.front().model.info().feature_names,
                     members_.front().model.info().threshold};
  for (const auto& m : members_) {
    if (m.model.info().feature_names != info_.feature_names) {
      throw Error("ensemble members disagree on feature names");
    }
  }
}

double BlindSeparateEnsemble::score(std::span<const double> features) const {
  double best = members_.front().model.score(features);
  for (size_t i = 1; i < members_.size(); ++i) {
    best = std::max(best, members_[i].model.score(features));
  }
  return best;
}

void BlindSeparateEnsemble::score_batch(const MatrixView& rows,
                                        std::span<double> out) const {
  members_.front().model.score_batch(rows, out);
  std::vector<double> member(rows.rows);
  for (size_t i = 1; i < members_.size(); ++i) {
    members_[i].model.score_batch(rows, member);
    simd::max_inplace(out, member);
  }
}

double predict_max_risk(const BlindSeparateEnsemble& ensemble,
                        std::span<const double> features) {
  return ensemble.score(features);
}

BlindSeparateEnsemble train_blind_separate(const TabularDataset& dataset,
                                           const ForestParams& params,
                                           uint64_t seed,
                                           size_t min_group_support) {
  const GroupColumn& column = dataset.groups();
  if (min_group_support < 1) throw Error("minimum group support must be >= 1");
  const auto members_by_code = rows_by_group(dataset);
  const GroupCode unspecified = column.categories.unspecified();

  // Pool for the unspecified member: its own rows plus undersized groups.
  std::vector<size_t> pool = members_by_code[unspecified];
  std::vector<std::string> merged;
  std::vector<std::pair<GroupCode, std::vector<size_t>>> own;
  for (size_t c = 0; c < members_by_code.size(); ++c) {
    if (c == unspecified || members_by_code[c].empty()) continue;
    if (members_by_code[c].size() >= min_group_support) {
      own.emplace_back(static_cast<GroupCode>(c), members_by_code[c]);
    } else {
      merged.push_back(column.categories.name(static_cast<GroupCode>(c)));
      pool.insert(pool.end(), members_by_code[c].begin(),
                  members_by_code[c].end());
    }
  }
  std::sort(pool.begin(), pool.end());

  std::vector<EnsembleMember> members;
  std::vector<ExcludedGroup> excluded;
  const auto train_member = [&](const std::string& name,
                                std::vector<std::string> merged_from,
                                const std::vector<size_t>& rows) {
    const uint64_t member_seed = derive_seed(seed, "blind-separate/" + name);
    members.push_back({name, std::move(merged_from), rows.size(), member_seed,
                       train_random_forest(dataset.subset(rows), params,
                                           member_seed)});
  };

  // Members in category order, the unspecified member at its own position.
  for (size_t c = 0; c < members_by_code.size(); ++c) {
    const std::string name = column.categories.name(static_cast<GroupCode>(c));
    if (c == unspecified) {
      if (pool.size() >= min_group_support) {
        train_member(name, merged, pool);
      } else {
        if (!members_by_code[c].empty()) {
          excluded.push_back({name, members_by_code[c].size()});
        }
        for (const auto& g : merged) {
          excluded.push_back(
              {g, members_by_code[column.categories.code(g)].size()});
        }
      }
      continue;
    }
    for (const auto& [code, rows] : own) {
      if (code == c) train_member(name, {}, rows);
    }
  }
  if (members.empty()) throw Error("insufficient per-group data");
  return BlindSeparateEnsemble(std::move(members), std::move(excluded),
                               min_group_support);
}

Json ensemble_to_json(const BlindSeparateEnsemble& ensemble) {
  Json members = Json::array();
  for (const auto& m : ensemble.members()) {
    members.push_back(Json{{"group", m.group},
                           {"merged_groups", m.merged_groups},
                           {"rows", m.rows},
                           {"seed", m.seed},
                           {"model", forest_to_json(m.model)}});
  }
  Json excluded = Json::array();
  for (const auto& e : ensemble.excluded()) {
    excluded.push_back(Json{{"group", e.group}, {"rows", e.rows}});
  }
  return Json{{"kind", "blind_separate_ensemble"},
              {"aggregation", "max"},
              {"min_group_support", ensemble.min_group_support()},
              {"members", std::move(members)},
              {"excluded", std::move(excluded)}};
}

BlindSeparateEnsemble ensemble_from_json(const Json& value,
                                         const std::string& pointer) {
  StrictObject obj(value, pointer);
  if (obj.string("kind") != "blind_separate_ensemble") {
    throw JsonSchemaError(obj.child_pointer("kind"),
                          "expected \"blind_separate_ensemble\"");
  }
  if (obj.string("aggregation") != "max") {
    throw JsonSchemaError(obj.child_pointer("aggregation"), "expected \"max\"");
  }
  const size_t min_support = obj.unsigned_integer("min_group_support");
  std::vector<EnsembleMember> members;
  const std::string mp = obj.child_pointer("members");
  const Json& arr = json_array(obj.at("members"), mp);
  for (size_t i = 0; i < arr.size(); ++i) {
    const std::string p = json_pointer_append(mp, std::to_string(i));
    StrictObject m(arr[i], p);
    std::vector<std::string> merged;
    const Json& mg = json_array(m.at("merged_groups"), m.child_pointer("merged_groups"));
    for (size_t j = 0; j < mg.size(); ++j) {
      merged.push_back(json_string(mg[j], m.child_pointer("merged_groups")));
    }
    const std::string group = m.string("group");
    const uint64_t rows = m.unsigned_integer("rows");
    const uint64_t seed = m.unsigned_integer("seed");
    RandomForest model = forest_from_json(m.at("model"), m.child_pointer("model"));
    m.finish();
    members.push_back({group, std::move(merged), rows, seed, std::move(model)});
  }
  std::vector<ExcludedGroup> excluded;
  const Json& ex = json_array(obj.at("excluded"), obj.child_pointer("excluded"));
  for (size_t i = 0; i < ex.size(); ++i) {
    StrictObject e(ex[i], json_pointer_append(obj.child_pointer("excluded"),
                                              std::to_string(i)));
    excluded.push_back({e.string("group"), e.unsigned_integer("rows")});
    e.finish();
  }
  obj.finish();
  return BlindSeparateEnsemble(std::move(members), std::move(excluded),
                               min_support);
}

}  // namespace fairlens::mitigation
