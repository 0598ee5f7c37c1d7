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

#include "fairlens/ledger/guidelines.h"

#include <array>
#include <string>

#include "fairlens/core/error.h"

namespace fairlens::ledger {
namespace {

constexpr std::array<Guideline, 9> kGuidelines = {{
    {"G1", "Invest in AI for responsible gambling to protect the vulnerable",
     "Beneficence"},
    {"G2", "Embrace explainability in sensitive applications of AI",
     "Explicability"},
    {"G3", "Build 'human-in-the-loop' into AI systems where appropriate",
     "Autonomy"},
    {"G4",
     "Leverage AI to deliver entertainment, however, change products where "
     "evidence points towards harm",
     "Beneficence"},
    {"G5", "Avoid creating or re-enforcing unfair biases", "Justice"},
    {"G6", "Be open about AI blind spots and failures", "Justice"},
    {"G7", "Be scientifically robust and continually evaluate",
     "Non-Maleficence"},
    {"G8", "Incorporate security, privacy, and diversity by design",
     "Non-Maleficence"},
    {"G9",
     "Empower all stakeholders, including customers, staff and Boards, in the "
     "possibilities and risks of AI",
     "Beneficence"},
}};

}  // namespace

std::span<const Guideline> guidelines() { return kGuidelines; }

const Guideline& find_guideline(std::string_view id) {
  for (const auto& g : kGuidelines) {
    if (g.id == id) return g;
  }
  throw Error("unknown guideline '" + std::string(id) + "'");
}

}  // namespace fairlens::ledger
