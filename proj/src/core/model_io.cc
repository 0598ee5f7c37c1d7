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

#include "fairlens/core/model_io.h"

namespace fairlens {

Json tree_params_to_json(const TreeParams& params) {
  return Json{{"max_depth", params.max_depth},
              {"min_leaf", params.min_leaf},
              {"feature_fraction", params.feature_fraction},
              {"bootstrap", params.bootstrap}};
}

TreeParams tree_params_from_json(const Json& value,
                                 const std::string& pointer) {
  StrictObject obj(value, pointer);
  TreeParams p;
  if (obj.has("max_depth")) p.max_depth = static_cast<int>(obj.integer("max_depth"));
  if (obj.has("min_leaf")) p.min_leaf = static_cast<int>(obj.integer("min_leaf"));
  if (obj.has("feature_fraction")) p.feature_fraction = obj.number("feature_fraction");
  if (obj.has("bootstrap")) p.bootstrap = obj.boolean("bootstrap");
  obj.finish();
  try {
    p.validate();
  } catch (const Error& e) {
    throw JsonSchemaError(pointer, e.what());
  }
  return p;
}

Json forest_params_to_json(const ForestParams& params) {
  Json j = tree_params_to_json(params.tree);
  j["num_trees"] = params.num_trees;
  return j;
}

ForestParams forest_params_from_json(const Json& value,
                                     const std::string& pointer) {
  ForestParams p;
  Json tree = value;
  if (!value.is_object()) throw JsonSchemaError(pointer, "expected an object");
  if (value.contains("num_trees")) {
    const Json& n = value.at("num_trees");
    if (!n.is_number_integer()) {
      throw JsonSchemaError(pointer + "/num_trees", "expected an integer");
    }
    p.num_trees = n.get<int>();
    tree.erase("num_trees");
  }
  // Forest defaults differ from single-tree defaults.
  Json merged = tree_params_to_json(p.tree);
  for (const auto& [k, v] : tree.items()) merged[k] = v;
  p.tree = tree_params_from_json(merged, pointer);
  try {
    p.validate();
  } catch (const Error& e) {
    throw JsonSchemaError(pointer, e.what());
  }
  return p;
}

namespace {

Json tree_to_json(const DecisionTree& tree) {
  Json nodes = Json::array();
  for (const TreeNode& n : tree.nodes()) {
    if (n.is_leaf()) {
      nodes.push_back(Json{{"value", n.value}, {"count", n.count}});
    } else {
      nodes.push_back(Json{{"feature", n.feature},
                           {"threshold", n.threshold},
                           {"left", n.left},
                           {"right", n.right},
                           {"value", n.value},
                           {"count", n.count}});
    }
  }
  return nodes;
}

DecisionTree tree_from_json(const Json& value, const std::string& pointer,
                            const OracleInfo& info) {
  std::vector<TreeNode> nodes;
  const Json& arr = json_array(value, pointer);
  for (size_t i = 0; i < arr.size(); ++i) {
    StrictObject obj(arr[i], json_pointer_append(pointer, std::to_string(i)));
    TreeNode n;
    n.value = obj.number("value");
    n.count = obj.unsigned_integer("count");
    if (obj.has("feature")) {
      n.feature = static_cast<int32_t>(obj.integer("feature"));
      n.threshold = obj.number("threshold");
      n.left = static_cast<int32_t>(obj.integer("left"));
      n.right = static_cast<int32_t>(obj.integer("right"));
    }
    obj.finish();
    nodes.push_back(n);
  }
  try {
    return DecisionTree(std::move(nodes), info);
  } catch (const Error& e) {
    throw JsonSchemaError(pointer, e.what());
  }
}

}  // namespace

Json forest_to_json(const RandomForest& forest) {
  Json trees = Json::array();
  for (const auto& t : forest.trees()) trees.push_back(tree_to_json(t));
  return Json{{"kind", "random_forest"},
              {"feature_names", forest.info().feature_names},
              {"threshold", forest.info().threshold},
              {"params", forest_params_to_json(forest.params())},
              {"seed", forest.seed()},
              {"trees", std::move(trees)}};
}

RandomForest forest_from_json(const Json& value, const std::string& pointer) {
  StrictObject obj(value, pointer);
  if (obj.string("kind") != "random_forest") {
    throw JsonSchemaError(obj.child_pointer("kind"),
                          "expected \"random_forest\"");
  }
  OracleInfo tree_info{"decision_tree", {}, 0.5};
  const Json& names = json_array(obj.at("feature_names"),
                                 obj.child_pointer("feature_names"));
  for (size_t i = 0; i < names.size(); ++i) {
    tree_info.feature_names.push_back(json_string(
        names[i], json_pointer_append(obj.child_pointer("feature_names"),
                                      std::to_string(i))));
  }
  const double threshold = obj.number("threshold");
  const ForestParams params =
      forest_params_from_json(obj.at("params"), obj.child_pointer("params"));
  const uint64_t seed = obj.unsigned_integer("seed");
  std::vector<DecisionTree> trees;
  const Json& arr = json_array(obj.at("trees"), obj.child_pointer("trees"));
  for (size_t i = 0; i < arr.size(); ++i) {
    trees.push_back(tree_from_json(
        arr[i], json_pointer_append(obj.child_pointer("trees"), std::to_string(i)),
        tree_info));
  }
  obj.finish();
  OracleInfo info{"random_forest", tree_info.feature_names, 0.5};
  RandomForest forest(std::move(trees), params, seed, std::move(info));
  forest.set_threshold(threshold);
  return forest;
}

}  // namespace fairlens
