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

#include "acars_audit/audit.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "acars_audit/csv.hpp"
#include "acars_audit/errors.hpp"
#include "acars_audit/text.hpp"

namespace acars_audit::audit {
namespace {

using content::EntityKind;
using content::Finding;

std::size_t index_of(StakeholderClass s) { return static_cast<std::size_t>(s); }
std::size_t index_of(PrivacyConcept c) { return static_cast<std::size_t>(c); }

void raise(ConceptGrades& out, PrivacyConcept c, BreachGrade g) {
  auto [it, inserted] = out.emplace(c, g);
  if (!inserted) it->second = std::max(it->second, g);
}

__extension__ typedef unsigned __int128 u128;

template <class T>
void unite(std::set<T>& into, const std::set<T>& from) {
  into.insert(from.begin(), from.end());
}

}  // namespace

std::string_view to_string(PrivacyConcept c) {
  switch (c) {
    case PrivacyConcept::kExistence: return "EXISTENCE";
    case PrivacyConcept::kIntention: return "INTENTION";
    case PrivacyConcept::kStatus: return "STATUS";
    case PrivacyConcept::kPassengerCargo: return "PASSENGER_CARGO";
  }
  return "?";
}

std::string_view display_name(PrivacyConcept c) {
  switch (c) {
    case PrivacyConcept::kExistence: return "Existence";
    case PrivacyConcept::kIntention: return "Intention";
    case PrivacyConcept::kStatus: return "Status";
    case PrivacyConcept::kPassengerCargo: return "Passenger/Cargo";
  }
  return "?";
}

std::optional<PrivacyConcept> parse_concept(std::string_view s) {
  for (auto c : kConcepts)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::string_view to_string(RequirementLevel l) {
  switch (l) {
    case RequirementLevel::kNone: return "NONE";
    case RequirementLevel::kLow: return "LOW";
    case RequirementLevel::kHigh: return "HIGH";
  }
  return "?";
}

std::string_view display_name(RequirementLevel l) {
  switch (l) {
    case RequirementLevel::kNone: return "None";
    case RequirementLevel::kLow: return "Low";
    case RequirementLevel::kHigh: return "High";
  }
  return "?";
}

std::optional<RequirementLevel> parse_requirement(std::string_view s) {
  for (auto l : {RequirementLevel::kNone, RequirementLevel::kLow, RequirementLevel::kHigh})
    if (to_string(l) == s) return l;
  return std::nullopt;
}

std::string_view to_string(BreachGrade g) {
  switch (g) {
    case BreachGrade::kNoEvidence: return "NO_EVIDENCE";
    case BreachGrade::kEvidence: return "EVIDENCE";
    case BreachGrade::kExplicit: return "EXPLICIT";
  }
  return "?";
}

std::optional<BreachGrade> parse_grade(std::string_view s) {
  for (auto g : {BreachGrade::kNoEvidence, BreachGrade::kEvidence, BreachGrade::kExplicit})
    if (to_string(g) == s) return g;
  return std::nullopt;
}

char letter(BreachGrade g) {
  switch (g) {
    case BreachGrade::kNoEvidence: return 'N';
    case BreachGrade::kEvidence: return 'V';
    case BreachGrade::kExplicit: return 'X';
  }
  return '?';
}

RequirementMatrix RequirementMatrix::defaults() {
  using L = RequirementLevel;
  RequirementMatrix m;
  m.levels_ = {{
      {L::kLow, L::kHigh, L::kHigh, L::kHigh},    // business
      {L::kNone, L::kNone, L::kNone, L::kHigh},   // commercial
      {L::kHigh, L::kHigh, L::kHigh, L::kHigh},   // military
      {L::kLow, L::kHigh, L::kHigh, L::kHigh},    // state
  }};
  return m;
}

RequirementMatrix RequirementMatrix::load(const std::filesystem::path& path) {
  auto m = defaults();
  for (const auto& row : read_csv(path, {"stakeholder", "concept", "level"})) {
    const auto s = registry::parse_stakeholder(to_upper(row.fields[0]));
    if (!s || *s == StakeholderClass::kUnknown) {
      throw SchemaError(path.string(), row.line, "unknown stakeholder '" + row.fields[0] + "'");
    }
    const auto c = parse_concept(to_upper(row.fields[1]));
    if (!c) throw SchemaError(path.string(), row.line, "unknown concept '" + row.fields[1] + "'");
    const auto l = parse_requirement(to_upper(row.fields[2]));
    if (!l) throw SchemaError(path.string(), row.line, "unknown level '" + row.fields[2] + "'");
    m.set(*s, *c, *l);
  }
  return m;
}

RequirementLevel RequirementMatrix::at(StakeholderClass s, PrivacyConcept c) const {
  if (s == StakeholderClass::kUnknown) return RequirementLevel::kNone;
  return levels_[index_of(s)][index_of(c)];
}

void RequirementMatrix::set(StakeholderClass s, PrivacyConcept c, RequirementLevel level) {
  if (s == StakeholderClass::kUnknown) return;
  levels_[index_of(s)][index_of(c)] = level;
}

ConceptGrades concept_of(const Finding& finding, Direction direction) {
  ConceptGrades out;
  raise(out, PrivacyConcept::kExistence, BreachGrade::kExplicit);
  const Category cat = finding.category;
  if (cat == Category::kPositionReport) {
    raise(out, PrivacyConcept::kStatus, direction == Direction::kDownlink
                                            ? BreachGrade::kExplicit
                                            : BreachGrade::kEvidence);
  } else if (content::is_intention(cat)) {
    const bool endpoints = finding.has_entity(EntityKind::kOrigin) ||
                           finding.has_entity(EntityKind::kDestination);
    raise(out, PrivacyConcept::kIntention,
          endpoints ? BreachGrade::kExplicit : BreachGrade::kEvidence);
  } else if (content::is_passenger(cat)) {
    const bool personal =
        finding.has_entity(EntityKind::kPersonName) || finding.has_entity(EntityKind::kPan);
    raise(out, PrivacyConcept::kPassengerCargo,
          personal ? BreachGrade::kExplicit : BreachGrade::kEvidence);
  } else if (cat == Category::kEncryptedWeak) {
    if (finding.derived.empty()) {
      raise(out, PrivacyConcept::kStatus, BreachGrade::kEvidence);
    } else {
      for (const auto& d : finding.derived)
        for (const auto& [c, g] : concept_of(d, direction)) raise(out, c, g);
    }
  }
  return out;
}

void CounterCell::merge(const CounterCell& other) {
  unite(aircraft, other.aircraft);
  unite(blocked_aircraft, other.blocked_aircraft);
  unite(messages, other.messages);
  unite(blocked_messages, other.blocked_messages);
}

BreachGrade AuditReport::grade(StakeholderClass s, PrivacyConcept c) const {
  return grades[index_of(s)][index_of(c)];
}

const CounterCell& AuditReport::cell(const CounterKey& key) const {
  static const CounterCell kEmpty;
  const auto it = counters.find(key);
  return it == counters.end() ? kEmpty : it->second;
}

void AuditReport::merge(const AuditReport& other) {
  for (std::size_t s = 0; s < grades.size(); ++s)
    for (std::size_t c = 0; c < grades[s].size(); ++c)
      grades[s][c] = std::max(grades[s][c], other.grades[s][c]);
  for (const auto& [key, cell] : other.counters) counters[key].merge(cell);
  for (const auto& [cls, cell] : other.fleet) {
    auto& mine = fleet[cls];
    unite(mine.aircraft, cell.aircraft);
    unite(mine.blocked, cell.blocked);
  }
  for (const auto& [territory, regs] : other.offshore) unite(offshore[territory], regs);
  for (const auto& [name, hash] : other.provenance) {
    auto [it, inserted] = provenance.emplace(name, hash);
    if (!inserted) it->second = std::min(it->second, hash);
  }
}

void accumulate(AuditReport& report, const MessageOutcome& outcome) {
  const auto& ctx = outcome.ctx;
  for (const auto& f : outcome.findings) {
    for (const auto& [c, g] : concept_of(f, ctx.direction)) {
      auto& cell = report.grades[index_of(ctx.stakeholder)][index_of(c)];
      cell = std::max(cell, g);
    }
  }
  std::set<std::optional<Category>> cats = {std::nullopt};
  for (const auto& f : outcome.findings) cats.insert(f.category);
  const std::optional<StakeholderClass> groups[2] = {std::nullopt, ctx.stakeholder};
  const std::optional<Link> links[2] = {std::nullopt, ctx.link};
  for (const auto& cat : cats) {
    for (const auto& g : groups) {
      for (const auto& l : links) {
        auto& cell = report.counters[CounterKey{g, cat, l}];
        cell.messages.insert(ctx.record_id);
        if (!ctx.registration.empty()) cell.aircraft.insert(ctx.registration);
        if (ctx.blocked()) {
          cell.blocked_messages.insert(ctx.record_id);
          if (!ctx.registration.empty()) cell.blocked_aircraft.insert(ctx.registration);
        }
      }
    }
  }
}

AuditReport grade_matrix(std::span<const MessageOutcome> outcomes,
                         const RequirementMatrix& matrix) {
  AuditReport report;
  report.requirements = matrix;
  for (const auto& o : outcomes) accumulate(report, o);
  return report;
}

AuditReport merge(AuditReport a, const AuditReport& b) {
  a.merge(b);
  return a;
}

std::string percent(std::uint64_t numerator, std::uint64_t denominator, int decimals) {
  if (denominator == 0) return "—";
  decimals = std::clamp(decimals, 0, 6);
  u128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const u128 num = static_cast<u128>(numerator) * 200 * scale;
  const u128 den = static_cast<u128>(denominator) * 2;
  const u128 q = (num + denominator) / den;
  const auto whole = static_cast<std::uint64_t>(q / scale);
  const auto frac = static_cast<std::uint64_t>(q % scale);
  if (decimals == 0) return fmt::format("{}%", whole);
  return fmt::format("{}.{:0{}d}%", whole, frac, decimals);
}

std::vector<ClassifiedAircraft> classify_fleet(const registry::RegistryIndex& index,
                                               const registry::RuleTable& rules,
                                               const registry::Blocklist& blocklist,
                                               const std::set<std::string>& ofc_list) {
  std::vector<ClassifiedAircraft> out;
  out.reserve(index.size());
  for (const auto* rec : index.records()) {
    ClassifiedAircraft a;
    a.record = *rec;
    a.decision = rules.classify(*rec);
    a.kind = registry::detect_registrant_kind(*rec, ofc_list);
    if (!rec->registration.empty()) {
      if (auto b = blocklist.lookup(rec->registration)) a.block = b->level;
    }
    out.push_back(std::move(a));
  }
  return out;
}

void add_fleet(AuditReport& report, std::span<const ClassifiedAircraft> fleet) {
  for (const auto& a : fleet) {
    const std::string key =
        a.record.registration.empty() ? "#" + a.record.icao24.value_or("") : a.record.registration;
    auto& cell = report.fleet[a.decision.cls];
    cell.aircraft.insert(key);
    if (a.block) cell.blocked.insert(key);
    if (a.decision.cls == StakeholderClass::kBusiness &&
        a.kind == registry::RegistrantKind::kOffshoreShell) {
      report.offshore[a.record.country].insert(key);
    }
  }
}

namespace {

std::vector<OffshoreRow> rank(std::map<std::string, std::size_t> counts, std::size_t threshold) {
  std::vector<OffshoreRow> rows;
  for (auto& [t, n] : counts)
    if (n > threshold) rows.push_back({t, n});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const OffshoreRow& a, const OffshoreRow& b) { return a.count > b.count; });
  return rows;
}

}  // namespace

std::vector<OffshoreRow> offshore_summary(std::span<const ClassifiedAircraft> fleet,
                                          std::size_t threshold) {
  std::map<std::string, std::size_t> counts;
  for (const auto& a : fleet) {
    if (a.decision.cls == StakeholderClass::kBusiness &&
        a.kind == registry::RegistrantKind::kOffshoreShell) {
      ++counts[a.record.country];
    }
  }
  return rank(std::move(counts), threshold);
}

std::vector<OffshoreRow> offshore_summary(const AuditReport& report, std::size_t threshold) {
  std::map<std::string, std::size_t> counts;
  for (const auto& [t, regs] : report.offshore) counts[t] = regs.size();
  return rank(std::move(counts), threshold);
}

}  // namespace acars_audit::audit
