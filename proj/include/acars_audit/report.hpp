// Copyright 2026 The ACARS Audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Report rendering, findings export and PII redaction.

#ifndef ACARS_AUDIT_REPORT_HPP_
#define ACARS_AUDIT_REPORT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acars_audit/audit.hpp"
#include "acars_audit/content.hpp"

namespace acars_audit::report {

enum class Format { kText, kCsv, kJson };
std::optional<Format> parse_format(std::string_view s);

/// Deterministic: identical reports give identical bytes.
std::string render(const audit::AuditReport& report, Format format);
std::string render_text(const audit::AuditReport& report);
std::string render_csv(const audit::AuditReport& report);
std::string render_json(const audit::AuditReport& report);

inline constexpr std::string_view kFindingsCsvHeader =
    "record_id,ts,link,registration,stakeholder,blocked,category,concept,grade,entities_json";

/// One row per (finding, concept) pair.
std::string findings_csv(std::span<const audit::MessageOutcome> outcomes);
/// One line per message; read_findings_jsonl restores it exactly.
std::string findings_jsonl(std::span<const audit::MessageOutcome> outcomes);
std::string to_json_line(const audit::MessageOutcome& outcome);
audit::MessageOutcome parse_json_line(std::string_view line);
/// Throws IoError / SchemaError.
std::vector<audit::MessageOutcome> read_findings_jsonl(const std::filesystem::path& path);

enum class RedactAction { kKeep, kMask, kPseudonym };
std::string_view to_string(RedactAction a);
std::optional<RedactAction> parse_redact_action(std::string_view s);

struct RedactionPolicy {
  std::string key;  // secret bytes for PSEUDONYM
  std::map<content::EntityKind, RedactAction> rules;
  RedactAction fallback = RedactAction::kKeep;

  /// PAN and CVV masked, everything else kept.
  static RedactionPolicy defaults();
  /// `KIND=ACTION` lines, '#' comments; `*=ACTION` sets the fallback.
  static RedactionPolicy load(const std::filesystem::path& path, std::string key = {});

  RedactAction action(content::EntityKind kind) const;
  bool needs_key() const;
  /// Throws ConfigError when a PSEUDONYM rule has no key.
  void validate() const;
};

/// PAN keeps its last four digits; other kinds are masked entirely.
std::string mask_value(content::EntityKind kind, std::string_view value);
/// 8 hex characters of HMAC-SHA256(key, kind NUL value).
std::string pseudonym(std::string_view key, content::EntityKind kind, std::string_view value);

/// Idempotent; entity counts, kinds and spans are preserved.
content::Finding redact(const content::Finding& finding, const RedactionPolicy& policy);
std::vector<content::Finding> redact(std::span<const content::Finding> findings,
                                     const RedactionPolicy& policy);
std::vector<audit::MessageOutcome> redact(std::span<const audit::MessageOutcome> outcomes,
                                          const RedactionPolicy& policy);

/// "1,617" style grouping.
std::string with_commas(std::uint64_t n);

}  // namespace acars_audit::report

#endif  // ACARS_AUDIT_REPORT_HPP_
