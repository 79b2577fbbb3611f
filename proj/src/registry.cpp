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

#include "acars_audit/registry.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "acars_audit/csv.hpp"
#include "acars_audit/errors.hpp"
#include "acars_audit/text.hpp"

namespace acars_audit::registry {
namespace {

bool is_hex_icao(std::string_view s) {
  return s.size() == 6 && std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return std::isxdigit(c) != 0;
         });
}

int class_rank(StakeholderClass c) {
  switch (c) {
    case StakeholderClass::kMilitary: return 0;
    case StakeholderClass::kState: return 1;
    case StakeholderClass::kCommercial: return 2;
    case StakeholderClass::kBusiness: return 3;
    case StakeholderClass::kUnknown: return 4;
  }
  return 4;
}

const std::string& field_value(const AircraftRecord& rec, RuleField f,
                               std::string& scratch) {
  switch (f) {
    case RuleField::kIcao24: scratch = rec.icao24.value_or(""); return scratch;
    case RuleField::kRegistration: return rec.registration;
    case RuleField::kType: return rec.ac_type;
    case RuleField::kOperator: return rec.operator_name;
    case RuleField::kOwner: return rec.owner;
    case RuleField::kCountry: return rec.country;
  }
  return rec.registration;
}

// Owner strings that denote a company rather than a natural person.
const std::regex& corporate_re() {
  static const std::regex re(
      R"(\b(LTD|LIMITED|HOLDINGS?|INC|INCORPORATED|CORP|CORPORATION|LLC|LLP|PLC|S\.?A|AG|GMBH|B\.?V|N\.?V|CO|COMPANY|ENTERPRISES?|INVESTMENTS?|CAPITAL|GROUP|VENTURES|AVIATION|MANAGEMENT|PARTNERS|FOUNDATION|SPV|FZE|FZCO)\b)",
      std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
  return re;
}

const std::regex& trust_re() {
  static const std::regex re(
      R"(\b(TRUST|TRUSTS|TRUSTEE|TRUSTEES|FIDUCIARY|AIRCRAFT GUARANTY|BANK OF UTAH|WELLS FARGO (BANK )?NORTHWEST|WILMINGTON TRUST)\b)",
      std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
  return re;
}

const std::regex& llc_re() {
  static const std::regex re(R"(^(N[0-9A-Z]{1,5}),? LLC\.?$)",
                             std::regex::ECMAScript | std::regex::icase);
  return re;
}

}  // namespace

std::string_view to_string(StakeholderClass c) {
  switch (c) {
    case StakeholderClass::kBusiness: return "BUSINESS";
    case StakeholderClass::kCommercial: return "COMMERCIAL";
    case StakeholderClass::kMilitary: return "MILITARY";
    case StakeholderClass::kState: return "STATE";
    case StakeholderClass::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<StakeholderClass> parse_stakeholder(std::string_view s) {
  for (auto c : {StakeholderClass::kBusiness, StakeholderClass::kCommercial,
                 StakeholderClass::kMilitary, StakeholderClass::kState,
                 StakeholderClass::kUnknown}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view display_name(StakeholderClass c) {
  switch (c) {
    case StakeholderClass::kBusiness: return "Business";
    case StakeholderClass::kCommercial: return "Commercial";
    case StakeholderClass::kMilitary: return "Military";
    case StakeholderClass::kState: return "State";
    case StakeholderClass::kUnknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(RegistrantKind k) {
  switch (k) {
    case RegistrantKind::kDirect: return "DIRECT";
    case RegistrantKind::kLlcScheme: return "LLC_SCHEME";
    case RegistrantKind::kTrustService: return "TRUST_SERVICE";
    case RegistrantKind::kOffshoreShell: return "OFFSHORE_SHELL";
    case RegistrantKind::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<RegistrantKind> parse_registrant_kind(std::string_view s) {
  for (auto k : {RegistrantKind::kDirect, RegistrantKind::kLlcScheme,
                 RegistrantKind::kTrustService, RegistrantKind::kOffshoreShell,
                 RegistrantKind::kUnknown}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string normalize_registration(std::string_view registration) {
  return to_upper(trim(registration));
}

const AircraftRecord* RegistryIndex::find_by_registration(
    std::string_view registration) const {
  const auto it = records_.find(normalize_registration(registration));
  if (it == records_.end() || it->second.registration.empty()) return nullptr;
  return &it->second;
}

const AircraftRecord* RegistryIndex::find_by_icao24(std::string_view icao24) const {
  std::string key(trim(icao24));
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  const auto it = by_icao24_.find(key);
  if (it == by_icao24_.end()) return nullptr;
  const auto rec = records_.find(it->second);
  return rec == records_.end() ? nullptr : &rec->second;
}

std::vector<const AircraftRecord*> RegistryIndex::records() const {
  std::vector<const AircraftRecord*> out;
  out.reserve(records_.size());
  for (const auto& [key, rec] : records_) out.push_back(&rec);
  return out;
}

bool RegistryIndex::upsert(AircraftRecord record) {
  const std::string key = record.registration.empty()
                              ? "#" + record.icao24.value_or("")
                              : record.registration;
  const auto existing = records_.find(key);
  const bool replaced = existing != records_.end();
  if (replaced && existing->second.icao24) by_icao24_.erase(*existing->second.icao24);
  if (record.icao24) by_icao24_[*record.icao24] = key;
  records_.insert_or_assign(key, std::move(record));
  return replaced;
}

RegistryIndex load_registry(std::span<const std::filesystem::path> paths,
                            const std::set<std::string>& countries,
                            std::vector<std::string>* warnings) {
  RegistryIndex index;
  for (const auto& path : paths) {
    std::set<std::string> seen_in_file;
    const auto rows = read_csv(
        path, {"icao24", "registration", "type", "operator", "owner", "country", "source"});
    for (const auto& row : rows) {
      AircraftRecord rec;
      const auto& icao = row.fields[0];
      if (!icao.empty()) {
        if (!is_hex_icao(icao)) {
          throw SchemaError(path.string(), row.line, "icao24 must be 6 hex digits");
        }
        std::string lower = icao;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        rec.icao24 = lower;
      }
      rec.registration = normalize_registration(row.fields[1]);
      if (!rec.icao24 && rec.registration.empty()) {
        throw SchemaError(path.string(), row.line,
                          "row needs an icao24 or a registration");
      }
      rec.ac_type = row.fields[2];
      rec.operator_name = row.fields[3];
      rec.owner = row.fields[4];
      rec.country = row.fields[5];
      rec.source = row.fields[6];
      if (!countries.empty() && !rec.country.empty() &&
          !countries.contains(to_upper(rec.country))) {
        throw SchemaError(path.string(), row.line,
                          "country '" + rec.country + "' is not in the gazetteer");
      }
      const std::string key =
          rec.registration.empty() ? "#" + *rec.icao24 : rec.registration;
      if (!seen_in_file.insert(key).second && warnings) {
        warnings->push_back(fmt::format("{}:{}: duplicate entry for {}, last row wins",
                                        path.string(), row.line, key));
      }
      index.upsert(std::move(rec));
    }
  }
  return index;
}

std::set<std::string> load_countries(const std::filesystem::path& path) {
  return read_word_list(path);
}

std::string_view to_string(BlockLevel l) {
  return l == BlockLevel::kAgency ? "AGENCY" : "SUBSCRIBER";
}

void Blocklist::add(BlockEntry entry) {
  const auto key = normalize_registration(entry.registration);
  auto [it, inserted] = entries_.try_emplace(key, entry.level);
  if (!inserted) it->second = std::max(it->second, entry.level);
}

std::optional<BlockEntry> Blocklist::lookup(std::string_view registration) const {
  const auto it = entries_.find(normalize_registration(registration));
  if (it == entries_.end()) return std::nullopt;
  return BlockEntry{it->first, it->second};
}

Blocklist Blocklist::load(const std::filesystem::path& path) {
  Blocklist out;
  for (const auto& row : read_csv(path, {"registration", "level"})) {
    if (trim(row.fields[0]).empty()) {
      throw SchemaError(path.string(), row.line, "empty registration");
    }
    const auto level = to_upper(row.fields[1]);
    if (level != "AGENCY" && level != "SUBSCRIBER") {
      throw SchemaError(path.string(), row.line,
                        "level must be AGENCY or SUBSCRIBER, got '" + row.fields[1] + "'");
    }
    out.add({row.fields[0], level == "AGENCY" ? BlockLevel::kAgency : BlockLevel::kSubscriber});
  }
  return out;
}

std::string_view to_string(RuleField f) {
  switch (f) {
    case RuleField::kIcao24: return "icao24";
    case RuleField::kRegistration: return "registration";
    case RuleField::kType: return "type";
    case RuleField::kOperator: return "operator";
    case RuleField::kOwner: return "owner";
    case RuleField::kCountry: return "country";
  }
  return "?";
}

std::optional<RuleField> parse_rule_field(std::string_view s) {
  for (auto f : {RuleField::kIcao24, RuleField::kRegistration, RuleField::kType,
                 RuleField::kOperator, RuleField::kOwner, RuleField::kCountry}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

RuleTable::RuleTable(std::vector<Rule> rules) {
  std::size_t order = 0;
  for (auto& r : rules) {
    if (r.cls == StakeholderClass::kUnknown) {
      throw std::invalid_argument("rule " + r.rule_id + ": UNKNOWN is not a rule class");
    }
    std::regex re;
    try {
      re = std::regex(r.pattern, std::regex::ECMAScript | std::regex::icase |
                                     std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw std::invalid_argument("rule " + r.rule_id + ": bad pattern: " + e.what());
    }
    rules_.push_back(Compiled{std::move(r), std::move(re), order++});
  }
  std::stable_sort(rules_.begin(), rules_.end(), [](const Compiled& a, const Compiled& b) {
    const int ra = class_rank(a.rule.cls), rb = class_rank(b.rule.cls);
    if (ra != rb) return ra < rb;
    if (a.rule.tier != b.rule.tier) return a.rule.tier < b.rule.tier;
    return a.order < b.order;
  });
}

RuleTable RuleTable::load(const std::filesystem::path& path) {
  std::vector<Rule> rules;
  std::set<std::string> ids;
  for (const auto& row : read_csv(path, {"tier", "field", "pattern", "class", "rule_id"})) {
    Rule r;
    const auto& tier = row.fields[0];
    auto [ptr, ec] = std::from_chars(tier.data(), tier.data() + tier.size(), r.tier);
    if (ec != std::errc() || ptr != tier.data() + tier.size()) {
      throw SchemaError(path.string(), row.line, "tier must be an integer");
    }
    const auto field = parse_rule_field(row.fields[1]);
    if (!field) throw SchemaError(path.string(), row.line, "unknown field '" + row.fields[1] + "'");
    r.field = *field;
    r.pattern = row.fields[2];
    const auto cls = parse_stakeholder(row.fields[3]);
    if (!cls || *cls == StakeholderClass::kUnknown) {
      throw SchemaError(path.string(), row.line, "bad class '" + row.fields[3] + "'");
    }
    r.cls = *cls;
    r.rule_id = row.fields[4];
    if (r.rule_id.empty() || !ids.insert(r.rule_id).second) {
      throw SchemaError(path.string(), row.line, "rule_id missing or duplicated");
    }
    try {
      std::regex probe(r.pattern, std::regex::ECMAScript | std::regex::icase);
    } catch (const std::regex_error& e) {
      throw SchemaError(path.string(), row.line, std::string("bad pattern: ") + e.what());
    }
    rules.push_back(std::move(r));
  }
  return RuleTable(std::move(rules));
}

StakeholderDecision RuleTable::classify(const AircraftRecord& rec) const {
  std::string scratch;
  for (const auto& c : rules_) {
    const auto& value = field_value(rec, c.rule.field, scratch);
    if (!value.empty() && std::regex_search(value, c.re)) {
      return {c.rule.cls, c.rule.rule_id};
    }
  }
  return {StakeholderClass::kUnknown, "none"};
}

std::set<std::string> default_ofc_list() {
  return {"ISLE OF MAN", "MALTA", "BERMUDA", "CAYMAN ISLANDS",
          "ARUBA",       "UNITED ARAB EMIRATES", "HONG KONG"};
}

std::set<std::string> load_ofc_list(const std::filesystem::path& path) {
  return read_word_list(path);
}

RegistrantKind detect_registrant_kind(const AircraftRecord& rec,
                                      const std::set<std::string>& ofc_list) {
  const auto owner = std::string(trim(rec.owner));
  if (owner.empty()) return RegistrantKind::kUnknown;
  if (ofc_list.contains(to_upper(trim(rec.country))) &&
      std::regex_search(owner, corporate_re())) {
    return RegistrantKind::kOffshoreShell;
  }
  std::smatch m;
  if (std::regex_match(owner, m, llc_re()) && !rec.registration.empty() &&
      to_upper(m[1].str()) == rec.registration) {
    return RegistrantKind::kLlcScheme;
  }
  if (std::regex_search(owner, trust_re())) return RegistrantKind::kTrustService;
  return RegistrantKind::kDirect;
}

}  // namespace acars_audit::registry
