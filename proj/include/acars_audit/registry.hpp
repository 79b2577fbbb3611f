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

// Aircraft metadata, display blocks, stakeholder classification and
// registrant-kind detection.
//
// File formats:
//   registry   icao24,registration,type,operator,owner,country,source
//   blocklist  registration,level            (level: AGENCY | SUBSCRIBER)
//   rules      tier,field,pattern,class,rule_id
//   OFC list   one territory per line
//   countries  one country or territory name per line

#ifndef ACARS_AUDIT_REGISTRY_HPP_
#define ACARS_AUDIT_REGISTRY_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acars_audit::registry {

enum class StakeholderClass { kBusiness, kCommercial, kMilitary, kState, kUnknown };

/// The four identifiable groups, in table order.
inline constexpr std::array<StakeholderClass, 4> kStakeholderGroups = {
    StakeholderClass::kBusiness, StakeholderClass::kCommercial,
    StakeholderClass::kMilitary, StakeholderClass::kState};

std::string_view to_string(StakeholderClass c);
std::optional<StakeholderClass> parse_stakeholder(std::string_view s);
/// Human readable row title ("Business", "Commercial", ...).
std::string_view display_name(StakeholderClass c);

enum class RegistrantKind { kDirect, kLlcScheme, kTrustService, kOffshoreShell, kUnknown };
std::string_view to_string(RegistrantKind k);
std::optional<RegistrantKind> parse_registrant_kind(std::string_view s);

struct AircraftRecord {
  std::optional<std::string> icao24;  // 6 lowercase hex chars
  std::string registration;           // uppercase
  std::string ac_type;
  std::string operator_name;
  std::string owner;
  std::string country;
  std::string source;

  bool operator==(const AircraftRecord&) const = default;
};

/// Uppercased, trimmed registration used as the join key everywhere.
std::string normalize_registration(std::string_view registration);

/// Lookup index over one or more registry snapshots.
class RegistryIndex {
 public:
  const AircraftRecord* find_by_registration(std::string_view registration) const;
  const AircraftRecord* find_by_icao24(std::string_view icao24) const;

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  /// Records ordered by their key (registration, or icao24 when absent).
  std::vector<const AircraftRecord*> records() const;

  /// Inserts or replaces the record with the same key. Returns true when an
  /// existing record was replaced.
  bool upsert(AircraftRecord record);

 private:
  std::map<std::string, AircraftRecord, std::less<>> records_;  // by key
  std::map<std::string, std::string, std::less<>> by_icao24_;   // icao -> key
};

/// Loads registry CSV files; later files override earlier ones per
/// registration. `countries`, when non-empty, is the closed list of
/// acceptable country names (compared case-insensitively). Duplicates
/// inside one file keep the last row and append a warning.
/// Throws IoError / SchemaError (file and line in the message).
RegistryIndex load_registry(std::span<const std::filesystem::path> paths,
                            const std::set<std::string>& countries = {},
                            std::vector<std::string>* warnings = nullptr);

/// Country gazetteer, uppercased.
std::set<std::string> load_countries(const std::filesystem::path& path);

enum class BlockLevel { kSubscriber, kAgency };  // ordered: AGENCY wins
std::string_view to_string(BlockLevel l);

struct BlockEntry {
  std::string registration;
  BlockLevel level = BlockLevel::kSubscriber;

  bool operator==(const BlockEntry&) const = default;
};

class Blocklist {
 public:
  /// Keeps the highest level seen for a registration.
  void add(BlockEntry entry);
  std::optional<BlockEntry> lookup(std::string_view registration) const;
  std::size_t size() const { return entries_.size(); }

  static Blocklist load(const std::filesystem::path& path);

 private:
  std::map<std::string, BlockLevel, std::less<>> entries_;
};

inline std::optional<BlockEntry> lookup_block(std::string_view registration,
                                              const Blocklist& blocklist) {
  return blocklist.lookup(registration);
}

enum class RuleField { kIcao24, kRegistration, kType, kOperator, kOwner, kCountry };
std::string_view to_string(RuleField f);
std::optional<RuleField> parse_rule_field(std::string_view s);

struct Rule {
  int tier = 0;
  RuleField field = RuleField::kOperator;
  std::string pattern;  // ECMAScript regex, case-insensitive search
  StakeholderClass cls = StakeholderClass::kUnknown;
  std::string rule_id;
};

struct StakeholderDecision {
  StakeholderClass cls = StakeholderClass::kUnknown;
  std::string rule_id;  // "none" when nothing matched

  bool operator==(const StakeholderDecision&) const = default;
};

/// Ordered rule table. Classes are tried MILITARY, STATE, COMMERCIAL,
/// BUSINESS; inside a class rules run by ascending tier, then file order,
/// and the first match wins.
class RuleTable {
 public:
  RuleTable() = default;
  /// Throws std::invalid_argument on a bad regex or an UNKNOWN class rule.
  explicit RuleTable(std::vector<Rule> rules);

  static RuleTable load(const std::filesystem::path& path);

  StakeholderDecision classify(const AircraftRecord& rec) const;
  std::size_t size() const { return rules_.size(); }

 private:
  struct Compiled {
    Rule rule;
    std::regex re;
    std::size_t order = 0;
  };
  std::vector<Compiled> rules_;  // sorted by precedence
};

inline StakeholderDecision classify_stakeholder(const AircraftRecord& rec,
                                                const RuleTable& rules) {
  return rules.classify(rec);
}

/// The off-shore territories observed with more than five business jets.
std::set<std::string> default_ofc_list();
std::set<std::string> load_ofc_list(const std::filesystem::path& path);

/// OFFSHORE_SHELL: registered in an OFC territory to a corporate entity.
/// LLC_SCHEME: owner is "<registration> LLC".
/// TRUST_SERVICE: owner names a trust or trustee service.
/// UNKNOWN when no owner is recorded, DIRECT otherwise.
RegistrantKind detect_registrant_kind(const AircraftRecord& rec,
                                      const std::set<std::string>& ofc_list);

}  // namespace acars_audit::registry

#endif  // ACARS_AUDIT_REGISTRY_HPP_
