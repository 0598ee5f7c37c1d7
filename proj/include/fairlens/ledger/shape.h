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

#ifndef FAIRLENS_LEDGER_SHAPE_H_
#define FAIRLENS_LEDGER_SHAPE_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fairlens/core/json_util.h"

namespace fairlens::ledger {

// Structural description of a JSON value, used to validate ledger sections
// on load. Objects are closed: keys not listed are rejected.
class Shape {
 public:
  enum class Kind { kString, kNumber, kInteger, kBool, kObject, kArray, kAny, kOrNull };

  static std::shared_ptr<Shape> string();
  static std::shared_ptr<Shape> number();
  static std::shared_ptr<Shape> integer();  // non-negative
  static std::shared_ptr<Shape> boolean();
  static std::shared_ptr<Shape> any();
  static std::shared_ptr<Shape> one_of(std::vector<std::string> values);
  static std::shared_ptr<Shape> array(std::shared_ptr<Shape> items);
  static std::shared_ptr<Shape> object();
  // `inner` or null, for array items.
  static std::shared_ptr<Shape> or_null(std::shared_ptr<Shape> inner);

  // Object fields. Optional fields may be absent; nullable ones may be null.
  Shape& required(const std::string& key, std::shared_ptr<Shape> shape);
  Shape& optional(const std::string& key, std::shared_ptr<Shape> shape);
  Shape& nullable(const std::string& key, std::shared_ptr<Shape> shape);
  // Object with arbitrary keys whose values all match `shape`.
  static std::shared_ptr<Shape> map_of(std::shared_ptr<Shape> values);

  // Throws JsonSchemaError at the first violation.
  void validate(const Json& value, const std::string& pointer) const;

 private:
  struct Field {
    std::shared_ptr<Shape> shape;
    bool required = true;
    bool nullable = false;
  };

  explicit Shape(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<std::string> enum_values_;
  std::shared_ptr<Shape> items_;
  std::shared_ptr<Shape> map_values_;
  std::map<std::string, Field> fields_;
};

}  // namespace fairlens::ledger

#endif  // FAIRLENS_LEDGER_SHAPE_H_
