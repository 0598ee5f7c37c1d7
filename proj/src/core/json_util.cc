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

#include "fairlens/core/json_util.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairlens {

std::string json_pointer_append(const std::string& pointer,
                                std::string_view token) {
  std::string out = pointer + "/";
  for (const char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

StrictObject::StrictObject(const Json& value, std::string pointer)
    : value_(value), pointer_(std::move(pointer)) {
  if (!value_.is_object()) {
    throw JsonSchemaError(pointer_.empty() ? "/" : pointer_,
                          "expected an object");
  }
}

bool StrictObject::has(const std::string& key) const {
  return value_.contains(key) && !value_.at(key).is_null();
}

std::string StrictObject::child_pointer(const std::string& key) const {
  return json_pointer_append(pointer_, key);
}

const Json& StrictObject::at(const std::string& key) {
  consumed_.insert(key);
  if (!value_.contains(key)) {
    throw JsonSchemaError(child_pointer(key), "missing required field");
  }
  return value_.at(key);
}

const Json* StrictObject::maybe(const std::string& key) {
  consumed_.insert(key);
  if (!value_.contains(key) || value_.at(key).is_null()) return nullptr;
  return &value_.at(key);
}

std::string StrictObject::string(const std::string& key) {
  return json_string(at(key), child_pointer(key));
}

double StrictObject::number(const std::string& key) {
  return json_number(at(key), child_pointer(key));
}

int64_t StrictObject::integer(const std::string& key) {
  const Json& v = at(key);
  if (!v.is_number_integer()) {
    throw JsonSchemaError(child_pointer(key), "expected an integer");
  }
  return v.get<int64_t>();
}

uint64_t StrictObject::unsigned_integer(const std::string& key) {
  const Json& v = at(key);
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0) {
    return static_cast<uint64_t>(v.get<int64_t>());
  }
  throw JsonSchemaError(child_pointer(key), "expected a non-negative integer");
}

bool StrictObject::boolean(const std::string& key) {
  const Json& v = at(key);
  if (!v.is_boolean()) {
    throw JsonSchemaError(child_pointer(key), "expected true or false");
  }
  return v.get<bool>();
}

void StrictObject::finish() const {
  for (const auto& [key, unused] : value_.items()) {
    if (!consumed_.contains(key)) {
      throw JsonSchemaError(child_pointer(key), "unknown field");
    }
  }
}

double json_number(const Json& value, const std::string& pointer) {
  if (!value.is_number()) throw JsonSchemaError(pointer, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw JsonSchemaError(pointer, "expected a finite number");
  return v;
}

std::string json_string(const Json& value, const std::string& pointer) {
  if (!value.is_string()) throw JsonSchemaError(pointer, "expected a string");
  return value.get<std::string>();
}

const Json& json_array(const Json& value, const std::string& pointer) {
  if (!value.is_array()) throw JsonSchemaError(pointer, "expected an array");
  return value;
}

namespace {

// Minimal recursive scanner; assumes the text already parsed as JSON.
class PointerLineScanner {
 public:
  explicit PointerLineScanner(std::string_view text) : text_(text) {}

  std::map<std::string, int> run() {
    skip_ws();
    value("");
    return std::move(lines_);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        break;
      }
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        out += text_[pos_ + 1];
        pos_ += 2;
        continue;
      }
      if (text_[pos_] == '\n') ++line_;
      out += text_[pos_++];
    }
    ++pos_;  // closing quote
    return out;
  }

  void value(const std::string& pointer) {
    if (pos_ >= text_.size()) return;
    lines_.emplace(pointer.empty() ? "/" : pointer, line_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // colon
        skip_ws();
        value(json_pointer_append(pointer, key));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      size_t index = 0;
      while (pos_ < text_.size() && text_[pos_] != ']') {
        value(json_pointer_append(pointer, std::to_string(index++)));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() &&
             std::string_view(",]} \t\r\n").find(text_[pos_]) ==
                 std::string_view::npos) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

}  // namespace

std::map<std::string, int> json_pointer_lines(std::string_view text) {
  return PointerLineScanner(text).run();
}

}  // namespace fairlens

namespace fairlens {

std::string anchored_message(std::string_view text, const std::string& source,
                             const JsonSchemaError& error) {
  const auto lines = json_pointer_lines(text);
  std::string pointer = error.pointer() == "/" ? "" : error.pointer();
  int line = 1;
  while (true) {
    if (auto it = lines.find(pointer); it != lines.end()) {
      line = it->second;
      break;
    }
    const size_t slash = pointer.rfind('/');
    if (slash == std::string::npos) break;
    pointer.resize(slash);
  }
  return source + ":" + std::to_string(line) + ": " + error.what();
}

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const size_t offset = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1;
    size_t line_start = 0;
    for (size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    std::string what = e.what();
    if (const size_t p = what.find("syntax error"); p != std::string::npos) {
      what = what.substr(p);
    }
    throw Error(source + ":" + std::to_string(line) + ":" +
                std::to_string(offset - line_start + 1) + ": " + what);
  }
}

}  // namespace fairlens
