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

#include "fairlens/ledger/shape.h"

#include <algorithm>

namespace fairlens::ledger {

std::shared_ptr<Shape> Shape::string() {
  return std::shared_ptr<Shape>(new Shape(Kind::kString));
}
std::shared_ptr<Shape> Shape::number() {
  return std::shared_ptr<Shape>(new Shape(Kind::kNumber));
}
std::shared_ptr<Shape> Shape::integer() {
  return std::shared_ptr<Shape>(new Shape(Kind::kInteger));
}
std::shared_ptr<Shape> Shape::boolean() {
  return std::shared_ptr<Shape>(new Shape(Kind::kBool));
}
std::shared_ptr<Shape> Shape::any() {
  return std::shared_ptr<Shape>(new Shape(Kind::kAny));
}
std::shared_ptr<Shape> Shape::object() {
  return std::shared_ptr<Shape>(new Shape(Kind::kObject));
}

std::shared_ptr<Shape> Shape::or_null(std::shared_ptr<Shape> inner) {
  auto s = std::shared_ptr<Shape>(new Shape(Kind::kOrNull));
  s->items_ = std::move(inner);
  return s;
}

std::shared_ptr<Shape> Shape::one_of(std::vector<std::string> values) {
  auto s = string();
  s->enum_values_ = std::move(values);
  return s;
}

std::shared_ptr<Shape> Shape::array(std::shared_ptr<Shape> items) {
  auto s = std::shared_ptr<Shape>(new Shape(Kind::kArray));
  s->items_ = std::move(items);
  return s;
}

std::shared_ptr<Shape> Shape::map_of(std::shared_ptr<Shape> values) {
  auto s = object();
  s->map_values_ = std::move(values);
  return s;
}

Shape& Shape::required(const std::string& key, std::shared_ptr<Shape> shape) {
  fields_[key] = Field{std::move(shape), true, false};
  return *this;
}

Shape& Shape::optional(const std::string& key, std::shared_ptr<Shape> shape) {
  fields_[key] = Field{std::move(shape), false, true};
  return *this;
}

Shape& Shape::nullable(const std::string& key, std::shared_ptr<Shape> shape) {
  fields_[key] = Field{std::move(shape), true, true};
  return *this;
}

void Shape::validate(const Json& value, const std::string& pointer) const {
  const std::string where = pointer.empty() ? "/" : pointer;
  switch (kind_) {
    case Kind::kAny:
      return;
    case Kind::kOrNull:
      if (!value.is_null()) items_->validate(value, pointer);
      return;
    case Kind::kString:
      if (!value.is_string()) throw JsonSchemaError(where, "expected a string");
      if (!enum_values_.empty() &&
          std::find(enum_values_.begin(), enum_values_.end(),
                    value.get<std::string>()) == enum_values_.end()) {
        std::string allowed;
        for (const auto& v : enum_values_) {
          allowed += (allowed.empty() ? "" : ", ") + v;
        }
        throw JsonSchemaError(where, "expected one of: " + allowed);
      }
      return;
    case Kind::kNumber:
      json_number(value, where);
      return;
    case Kind::kInteger:
      if (!value.is_number_unsigned() &&
          !(value.is_number_integer() && value.get<int64_t>() >= 0)) {
        throw JsonSchemaError(where, "expected a non-negative integer");
      }
      return;
    case Kind::kBool:
      if (!value.is_boolean()) throw JsonSchemaError(where, "expected a boolean");
      return;
    case Kind::kArray:
      if (!value.is_array()) throw JsonSchemaError(where, "expected an array");
      for (size_t i = 0; i < value.size(); ++i) {
        items_->validate(value[i], json_pointer_append(pointer, std::to_string(i)));
      }
      return;
    case Kind::kObject:
      break;
  }
  if (!value.is_object()) throw JsonSchemaError(where, "expected an object");
  if (map_values_) {
    for (const auto& [key, v] : value.items()) {
      map_values_->validate(v, json_pointer_append(pointer, key));
    }
    return;
  }
  for (const auto& [key, v] : value.items()) {
    if (!fields_.count(key)) {
      throw JsonSchemaError(json_pointer_append(pointer, key), "unknown field");
    }
  }
  for (const auto& [key, field] : fields_) {
    const std::string child = json_pointer_append(pointer, key);
    if (!value.contains(key)) {
      if (field.required) throw JsonSchemaError(child, "missing required field");
      continue;
    }
    const Json& v = value.at(key);
    if (v.is_null()) {
      if (!field.nullable) throw JsonSchemaError(child, "must not be null");
      continue;
    }
    field.shape->validate(v, child);
  }
}

}  // namespace fairlens::ledger
