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

#ifndef FAIRLENS_LEDGER_REPORT_H_
#define FAIRLENS_LEDGER_REPORT_H_

#include <string>

#include "fairlens/core/json_util.h"
#include "fairlens/ledger/ledger.h"

namespace fairlens::ledger {

// Per-group values in the published table style: "F: 53.7% M: 46.5% U: 52.9%".
// Takes the "groups" array of a group-metrics table and a row field such as
// "tpr"; undefined values print as "n/a".
std::string group_value_row(const Json& groups, const std::string& field);

// Markdown rendering of the ledger: one section per audit step (unrecorded
// steps marked pending), guideline tags with their text, explainability
// entries. Contains no timestamps, so equal ledgers give equal bytes.
std::string render_report(const AuditLedger& ledger);

}  // namespace fairlens::ledger

#endif  // FAIRLENS_LEDGER_REPORT_H_
