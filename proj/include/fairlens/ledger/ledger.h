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

#ifndef FAIRLENS_LEDGER_LEDGER_H_
#define FAIRLENS_LEDGER_LEDGER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/core/error.h"
#include "fairlens/core/json_util.h"

namespace fairlens::ledger {

inline constexpr std::string_view kSchemaVersion = "fairlens.ledger/1";
inline constexpr int kCanonicalDigits = 9;

class LedgerError : public Error {
 public:
  using Error::Error;
};

// Ledger written by a different schema version. Never coerced.
class LedgerMigrationError : public LedgerError {
 public:
  using LedgerError::LedgerError;
};

// Section keys of the six audit steps, in order.
inline constexpr std::string_view kStepKeys[6] = {
    "step1_scope",    "step2_categories", "step3_metrics",
    "step4_findings", "step5_plan",       "step6_monitoring"};
inline constexpr std::string_view kStepTitles[6] = {
    "Prioritise scope",   "Prioritise bias categories",
    "Define bias metrics", "Analyse bias presence",
    "Form and implement a plan", "Monitor and reflect"};

// Every double rounded to kCanonicalDigits significant digits.
Json canonicalize(const Json& value);
// Compact canonical text, the input to section hashes.
std::string canonical_compact(const Json& value);
std::string sha256_hex(std::string_view bytes);

// Audit ledger document. Sections are stored in canonical JSON form and each
// carries a SHA-256 hash taken when it was written, so later edits show up.
class AuditLedger {
 public:
  // Empty ledger: no steps recorded yet.
  AuditLedger(std::string ledger_id, uint64_t seed, std::string timestamp,
              std::optional<std::string> operator_alias = std::nullopt);

  // Validates schema version, shape and step ordering.
  static AuditLedger from_json(const Json& doc);
  static AuditLedger parse(std::string_view text);

  const Json& doc() const { return doc_; }
  std::string id() const;
  uint64_t seed() const;

  bool has(std::string_view section) const;
  const Json& section(std::string_view section) const;

  // Writes a section that does not exist yet. Re-writing identical content
  // is a no-op; different content is refused, so earlier steps never change.
  // Returns true when something was written.
  bool write_section(std::string_view key, const Json& content);
  // Appends to explainability_entries unless an identical entry exists.
  bool append_explainability(const Json& entry);
  // Appends records to step6_monitoring.blind_spot_overrides.
  bool append_blind_spot_overrides(const Json& overrides);

  void record_history(const std::string& command, const std::string& timestamp,
                      const std::vector<std::string>& sections);

  // Sections whose stored hash no longer matches their content.
  std::vector<std::string> tampered_sections() const;

  // Canonical bytes (sorted keys, 9 significant digits, 2-space indent).
  std::string serialize() const;

 private:
  explicit AuditLedger(Json doc) : doc_(std::move(doc)) {}
  void rehash(std::string_view key);
  static Json hashed_content(const Json& doc, std::string_view key);

  Json doc_;
};

AuditLedger load_ledger(const std::filesystem::path& path);
// Atomic: writes a temporary file, then renames it over the target.
void save_ledger(const AuditLedger& ledger, const std::filesystem::path& path);

// Hash-based id of a config and seed.
std::string make_ledger_id(const Json& config, uint64_t seed);

// Numeric leaves of `actual` that differ from `expected` by more than
// `tolerance`, plus structural differences, as JSON pointers with detail.
// Strings under keys in `ignored_keys` are skipped.
std::vector<std::string> numeric_differences(
    const Json& expected, const Json& actual, double tolerance,
    const std::vector<std::string>& ignored_keys = {});

}  // namespace fairlens::ledger

#endif  // FAIRLENS_LEDGER_LEDGER_H_
