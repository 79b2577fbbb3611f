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

// End-to-end audit over a loaded corpus: parse, attribute, detect, crack,
// grade. Every stage has a serial reference and an OpenMP kernel that must
// produce identical results.

#ifndef ACARS_AUDIT_PIPELINE_HPP_
#define ACARS_AUDIT_PIPELINE_HPP_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "acars_audit/audit.hpp"
#include "acars_audit/cipher.hpp"
#include "acars_audit/content.hpp"
#include "acars_audit/ingest.hpp"
#include "acars_audit/labels.hpp"
#include "acars_audit/registry.hpp"

namespace acars_audit::pipeline {

/// Read-only inputs shared by all workers.
struct Context {
  frame::LabelRegistry labels;
  content::Lexicon lexicon;
  registry::RegistryIndex registry;
  registry::RuleTable rules;
  registry::Blocklist blocklist;
  std::set<std::string> ofc_list = registry::default_ofc_list();
  cipher::CipherThresholds thresholds;
  std::optional<cipher::CribTemplate> crib;
  audit::RequirementMatrix requirements = audit::RequirementMatrix::defaults();
  std::map<std::string, std::string> provenance;

  /// Classifies the registry once. Call after the fields above are set.
  void prepare();

  const std::vector<audit::ClassifiedAircraft>& fleet() const { return fleet_; }
  const audit::ClassifiedAircraft* aircraft(std::string_view registration) const;

 private:
  std::vector<audit::ClassifiedAircraft> fleet_;
  std::map<std::string, std::size_t, std::less<>> by_registration_;
};

/// Stakeholder, block and registrant data for one message.
audit::MessageContext attribute(const ingest::AcarsRecord& record,
                                const std::string& registration, const Context& ctx);

/// Parse + detect for one record. Parsed messages always carry at least one
/// finding (EXISTENCE_ONLY when nothing else fired). Findings from records
/// with capture errors are demoted one confidence level.
audit::MessageOutcome analyze(const ingest::AcarsRecord& record, const Context& ctx);

/// Result i belongs to record i.
std::vector<audit::MessageOutcome> analyze_serial(std::span<const ingest::AcarsRecord> records,
                                                  const Context& ctx);
/// threads <= 0 uses the OpenMP default.
std::vector<audit::MessageOutcome> analyze_parallel(std::span<const ingest::AcarsRecord> records,
                                                    const Context& ctx, int threads = 0);

struct CrackStats {
  std::size_t encrypted_messages = 0;
  std::size_t aircraft = 0;
  std::size_t cracked_aircraft = 0;
  std::size_t decoded_messages = 0;  // deciphered text produced a finding
  std::map<std::string, cipher::SubstitutionKey> keys;  // by registration
  std::map<std::string, std::string> failures;          // registration -> reason
};

/// Cracks ENCRYPTED_WEAK messages per aircraft with the context's crib and
/// stores the findings of the deciphered text as derived findings.
/// `outcomes[i]` must belong to `records[i]`. No-op without a crib.
CrackStats crack_encrypted(std::span<const ingest::AcarsRecord> records,
                           std::vector<audit::MessageOutcome>& outcomes, const Context& ctx);

audit::AuditReport grade_serial(std::span<const audit::MessageOutcome> outcomes,
                                const Context& ctx);
/// Per-thread partial reports folded with AuditReport::merge.
audit::AuditReport grade_parallel(std::span<const audit::MessageOutcome> outcomes,
                                  const Context& ctx, int threads = 0);

struct AuditRun {
  std::vector<audit::MessageOutcome> outcomes;
  audit::AuditReport report;
  CrackStats crack;
};

/// analyze -> crack -> grade. `parallel` selects the OpenMP kernels.
AuditRun run_audit(std::span<const ingest::AcarsRecord> records, const Context& ctx,
                   bool parallel = true, int threads = 0);

}  // namespace acars_audit::pipeline

#endif  // ACARS_AUDIT_PIPELINE_HPP_
