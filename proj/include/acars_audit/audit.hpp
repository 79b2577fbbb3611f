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

// Privacy grading: findings -> (concept, grade) pairs, per-stakeholder
// aggregation and the counters behind the summary tables.

#ifndef ACARS_AUDIT_AUDIT_HPP_
#define ACARS_AUDIT_AUDIT_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acars_audit/content.hpp"
#include "acars_audit/ingest.hpp"
#include "acars_audit/registry.hpp"

namespace acars_audit::audit {

using content::Category;
using ingest::Direction;
using ingest::Link;
using registry::StakeholderClass;

enum class PrivacyConcept { kExistence, kIntention, kStatus, kPassengerCargo };
inline constexpr std::array<PrivacyConcept, 4> kConcepts = {
    PrivacyConcept::kExistence, PrivacyConcept::kIntention, PrivacyConcept::kStatus,
    PrivacyConcept::kPassengerCargo};
std::string_view to_string(PrivacyConcept c);
std::string_view display_name(PrivacyConcept c);
std::optional<PrivacyConcept> parse_concept(std::string_view s);

enum class RequirementLevel { kNone, kLow, kHigh };
std::string_view to_string(RequirementLevel l);
std::string_view display_name(RequirementLevel l);
std::optional<RequirementLevel> parse_requirement(std::string_view s);

enum class BreachGrade { kNoEvidence, kEvidence, kExplicit };  // ordered
std::string_view to_string(BreachGrade g);
std::optional<BreachGrade> parse_grade(std::string_view s);
/// N, V or X.
char letter(BreachGrade g);

class RequirementMatrix {
 public:
  /// Business (LOW,HIGH,HIGH,HIGH), Commercial (NONE,NONE,NONE,HIGH),
  /// Military (HIGH,HIGH,HIGH,HIGH), State (LOW,HIGH,HIGH,HIGH).
  static RequirementMatrix defaults();
  /// Defaults overridden by `stakeholder,concept,level` rows.
  static RequirementMatrix load(const std::filesystem::path& path);

  /// UNKNOWN has no requirement row and reads as NONE.
  RequirementLevel at(StakeholderClass s, PrivacyConcept c) const;
  void set(StakeholderClass s, PrivacyConcept c, RequirementLevel level);

  /// Military existence assumes an operational flight (not training).
  bool military_existence_caveat = true;

  bool operator==(const RequirementMatrix&) const = default;

 private:
  std::array<std::array<RequirementLevel, 4>, 4> levels_{};
};

/// One entry per concept touched, holding the strongest grade.
using ConceptGrades = std::map<PrivacyConcept, BreachGrade>;
ConceptGrades concept_of(const content::Finding& finding, Direction direction);

/// What the pipeline knows about the message a finding came from.
struct MessageContext {
  std::string record_id;
  double timestamp = 0.0;
  Link link = Link::kVhfPoa;
  Direction direction = Direction::kUnknown;  // effective direction
  std::string registration;
  StakeholderClass stakeholder = StakeholderClass::kUnknown;
  std::string rule_id = "none";
  std::optional<registry::BlockLevel> block;
  std::string country;
  registry::RegistrantKind registrant_kind = registry::RegistrantKind::kUnknown;

  bool blocked() const { return block.has_value(); }
  bool operator==(const MessageContext&) const = default;
};

/// Every message in the corpus, parsed or not, with its findings.
struct MessageOutcome {
  MessageContext ctx;
  std::optional<std::string> parse_error;  // set when the frame did not parse
  std::vector<content::Finding> findings;

  bool operator==(const MessageOutcome&) const = default;
};

/// nullopt fields mean "all".
struct CounterKey {
  std::optional<StakeholderClass> stakeholder;
  std::optional<Category> category;
  std::optional<Link> link;

  auto operator<=>(const CounterKey&) const = default;
};

struct CounterCell {
  std::set<std::string> aircraft;
  std::set<std::string> blocked_aircraft;
  std::set<std::string> messages;
  std::set<std::string> blocked_messages;

  void merge(const CounterCell& other);
  bool operator==(const CounterCell&) const = default;
};

struct FleetCell {
  std::set<std::string> aircraft;
  std::set<std::string> blocked;

  bool operator==(const FleetCell&) const = default;
};

struct AuditReport {
  /// Indexed by StakeholderClass (UNKNOWN included) and PrivacyConcept.
  std::array<std::array<BreachGrade, 4>, 5> grades{};
  RequirementMatrix requirements = RequirementMatrix::defaults();
  std::map<CounterKey, CounterCell> counters;
  std::map<StakeholderClass, FleetCell> fleet;
  /// Territory -> business aircraft registered there through a shell.
  std::map<std::string, std::set<std::string>> offshore;
  /// Config file name -> SHA-256.
  std::map<std::string, std::string> provenance;

  BreachGrade grade(StakeholderClass s, PrivacyConcept c) const;
  /// Empty cell when nothing was counted under `key`.
  const CounterCell& cell(const CounterKey& key) const;

  /// Grades take the max, sets take the union. Associative, commutative
  /// and idempotent.
  void merge(const AuditReport& other);
  bool operator==(const AuditReport&) const = default;
};

void accumulate(AuditReport& report, const MessageOutcome& outcome);

AuditReport grade_matrix(std::span<const MessageOutcome> outcomes,
                         const RequirementMatrix& matrix = RequirementMatrix::defaults());

AuditReport merge(AuditReport a, const AuditReport& b);

/// Round-half-up percentage with `decimals` places and a '%' suffix;
/// "—" when the denominator is zero.
std::string percent(std::uint64_t numerator, std::uint64_t denominator, int decimals = 2);

struct ClassifiedAircraft {
  registry::AircraftRecord record;
  registry::StakeholderDecision decision;
  registry::RegistrantKind kind = registry::RegistrantKind::kUnknown;
  std::optional<registry::BlockLevel> block;
};

std::vector<ClassifiedAircraft> classify_fleet(const registry::RegistryIndex& index,
                                               const registry::RuleTable& rules,
                                               const registry::Blocklist& blocklist,
                                               const std::set<std::string>& ofc_list);

/// Adds fleet and off-shore tallies for the classified registry.
void add_fleet(AuditReport& report, std::span<const ClassifiedAircraft> fleet);

struct OffshoreRow {
  std::string territory;
  std::size_t count = 0;

  bool operator==(const OffshoreRow&) const = default;
};

inline constexpr std::size_t kDefaultOffshoreThreshold = 5;

/// OFFSHORE_SHELL business aircraft per territory, keeping territories with
/// more than `threshold`, largest first.
std::vector<OffshoreRow> offshore_summary(std::span<const ClassifiedAircraft> fleet,
                                          std::size_t threshold = kDefaultOffshoreThreshold);
std::vector<OffshoreRow> offshore_summary(const AuditReport& report,
                                          std::size_t threshold = kDefaultOffshoreThreshold);

}  // namespace acars_audit::audit

#endif  // ACARS_AUDIT_AUDIT_HPP_
