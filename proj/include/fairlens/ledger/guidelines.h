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

#ifndef FAIRLENS_LEDGER_GUIDELINES_H_
#define FAIRLENS_LEDGER_GUIDELINES_H_

#include <span>
#include <string_view>

namespace fairlens::ledger {

struct Guideline {
  std::string_view id;
  std::string_view text;
  std::string_view principle;
};

// The nine gambling-industry guidelines and the high-level principle each
// maps to.
std::span<const Guideline> guidelines();

// Throws for an unknown id such as "G10".
const Guideline& find_guideline(std::string_view id);

}  // namespace fairlens::ledger

#endif  // FAIRLENS_LEDGER_GUIDELINES_H_
