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

#ifndef FAIRLENS_CORE_JSON_UTIL_H_
#define FAIRLENS_CORE_JSON_UTIL_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "fairlens/core/error.h"
#include "json.hpp"

namespace fairlens {

using Json = nlohmann::json;

// Schema error anchored at a JSON pointer ("/audit/metrics/0").
class JsonSchemaError : public Error {
 public:
  JsonSchemaError(std::string pointer, const std::string& message)
      : Error(pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Reads an object field by field and rejects keys nobody asked for.
// Call finish() once every expected field has been read.
class StrictObject {
 public:
  StrictObject(const Json& value, std::string pointer);

  bool has(const std::string& key) const;
  const Json& at(const std::string& key);
  // Null when absent or JSON null.
  const Json* maybe(const std::string& key);

  std::string string(const std::string& key);
  double number(const std::string& key);
  int64_t integer(const std::string& key);
  uint64_t unsigned_integer(const std::string& key);
  bool boolean(const std::string& key);

  std::string child_pointer(const std::string& key) const;
  const std::string& pointer() const { return pointer_; }

  void finish() const;

 private:
  const Json& value_;
  std::string pointer_;
  std::set<std::string> consumed_;
};

std::string json_pointer_append(const std::string& pointer,
                                std::string_view token);

double json_number(const Json& value, const std::string& pointer);
std::string json_string(const Json& value, const std::string& pointer);
const Json& json_array(const Json& value, const std::string& pointer);

// Maps each JSON pointer in `text` to the 1-based line where its value
// starts. Used to anchor configuration errors to a line.
std::map<std::string, int> json_pointer_lines(std::string_view text);

// "<source>:<line>: <pointer>: <message>", using the nearest enclosing value
// that exists in `text` when the pointer itself is missing.
std::string anchored_message(std::string_view text, const std::string& source,
                             const JsonSchemaError& error);

// Parses JSON, reporting syntax errors as "<source>:<line>:<column>: ...".
Json parse_json_text(std::string_view text, const std::string& source);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_JSON_UTIL_H_
