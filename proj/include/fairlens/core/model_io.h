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

#ifndef FAIRLENS_CORE_MODEL_IO_H_
#define FAIRLENS_CORE_MODEL_IO_H_

#include "fairlens/core/decision_tree.h"
#include "fairlens/core/json_util.h"
#include "fairlens/core/random_forest.h"

namespace fairlens {

Json tree_params_to_json(const TreeParams& params);
TreeParams tree_params_from_json(const Json& value, const std::string& pointer);
Json forest_params_to_json(const ForestParams& params);
ForestParams forest_params_from_json(const Json& value,
                                     const std::string& pointer);

// Doubles are written shortest-round-trip, so load(save(m)) scores exactly
// like m.
Json forest_to_json(const RandomForest& forest);
RandomForest forest_from_json(const Json& value, const std::string& pointer);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_MODEL_IO_H_
