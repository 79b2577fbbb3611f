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

#include "acars_audit/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <nlohmann/json.hpp>

#include "acars_audit/csv.hpp"
#include "acars_audit/digest.hpp"
#include "acars_audit/errors.hpp"
#include "acars_audit/text.hpp"

namespace acars_audit::report {
namespace {

using audit::AuditReport;
using audit::CounterCell;
using audit::CounterKey;
using audit::MessageOutcome;
using content::Category;
using content::EntityKind;
using content::Finding;
using ingest::Link;
using json = nlohmann::ordered_json;
using registry::StakeholderClass;

struct LinkGroup {
  std::string_view name;
  std::vector<Link> links;
};

const std::vector<LinkGroup>& link_groups() {
  static const std::vector<LinkGroup> groups = {
      {"VHF", {Link::kVhfPoa, Link::kVdlm2}},
      {"SATCOM", {Link::kSatcomUplink, Link::kSatcomDownlink}},
      {"HF", {Link::kHf}},
  };
  return groups;
}

// Union of counter cells over a set of links (all links when empty).
CounterCell gather(const AuditReport& r, std::optional<StakeholderClass> s,
                   std::optional<Category> c, const std::vector<Link>& links) {
  if (links.empty()) return r.cell(CounterKey{s, c, std::nullopt});
  CounterCell out;
  for (Link l : links) out.merge(r.cell(CounterKey{s, c, l}));
  return out;
}

std::string count_pct(std::size_t n, std::size_t den, int decimals) {
  return fmt::format("{} ({})", with_commas(n), audit::percent(n, den, decimals));
}

std::string pad(std::string_view s, std::size_t width) {
  // Counts code points so multibyte cells stay aligned.
  std::size_t cps = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++cps;
  std::string out(s);
  if (cps < width) out.append(width - cps, ' ');
  return out;
}

std::string requirement_cell(const AuditReport& r, StakeholderClass s, audit::PrivacyConcept c) {
  std::string out(audit::display_name(r.requirements.at(s, c)));
  if (s == StakeholderClass::kMilitary && c == audit::PrivacyConcept::kExistence &&
      r.requirements.military_existence_caveat) {
    out += "*";
  }
  return out;
}

std::string breach_cell(const AuditReport& r, StakeholderClass s, audit::PrivacyConcept c) {
  if (r.requirements.at(s, c) == audit::RequirementLevel::kNone) return "N/A";
  return std::string(1, audit::letter(r.grade(s, c)));
}

std::string opt_name(std::optional<StakeholderClass> s) {
  return s ? std::string(registry::to_string(*s)) : "ALL";
}
std::string opt_name(std::optional<Category> c) {
  return c ? std::string(content::to_string(*c)) : "ALL";
}
std::string opt_name(std::optional<Link> l) {
  return l ? std::string(ingest::to_string(*l)) : "ALL";
}

std::size_t fleet_size(const AuditReport& r, StakeholderClass s, bool blocked) {
  const auto it = r.fleet.find(s);
  if (it == r.fleet.end()) return 0;
  return blocked ? it->second.blocked.size() : it->second.aircraft.size();
}

json entity_json(const content::Entity& e) {
  json j;
  j["kind"] = content::to_string(e.kind);
  j["value"] = e.value;
  j["span"] = json::array({e.span.begin, e.span.end});
  if (e.redacted) j["redacted"] = true;
  if (e.group >= 0) j["group"] = e.group;
  return j;
}

json entities_json(const std::vector<content::Entity>& entities) {
  json arr = json::array();
  for (const auto& e : entities) arr.push_back(entity_json(e));
  return arr;
}

json finding_json(const Finding& f) {
  json j;
  j["category"] = content::to_string(f.category);
  j["confidence"] = content::to_string(f.confidence);
  j["entities"] = entities_json(f.entities);
  if (f.position) j["position"] = json::array({f.position->lat, f.position->lon});
  if (!f.derived.empty()) {
    json d = json::array();
    for (const auto& x : f.derived) d.push_back(finding_json(x));
    j["derived"] = std::move(d);
  }
  return j;
}

template <class T>
T require(const json& j, const char* field) {
  if (!j.contains(field)) throw std::invalid_argument(std::string("missing field '") + field + "'");
  return j.at(field).get<T>();
}

Finding finding_from_json(const json& j, const std::string& record_id) {
  Finding f;
  const auto cat = content::parse_category(require<std::string>(j, "category"));
  if (!cat) throw std::invalid_argument("unknown category");
  f.category = *cat;
  const auto conf = content::parse_confidence(require<std::string>(j, "confidence"));
  if (!conf) throw std::invalid_argument("unknown confidence");
  f.confidence = *conf;
  f.record_id = record_id;
  for (const auto& e : j.at("entities")) {
    content::Entity ent;
    const auto kind = content::parse_entity_kind(require<std::string>(e, "kind"));
    if (!kind) throw std::invalid_argument("unknown entity kind");
    ent.kind = *kind;
    ent.value = require<std::string>(e, "value");
    ent.span = {e.at("span").at(0).get<std::size_t>(), e.at("span").at(1).get<std::size_t>()};
    ent.redacted = e.value("redacted", false);
    ent.group = e.value("group", -1);
    f.entities.push_back(std::move(ent));
  }
  if (j.contains("position")) {
    f.position = content::Position{j["position"].at(0).get<double>(),
                                   j["position"].at(1).get<double>()};
  }
  if (j.contains("derived")) {
    for (const auto& d : j["derived"]) f.derived.push_back(finding_from_json(d, record_id));
  }
  return f;
}

}  // namespace

std::string with_commas(std::uint64_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "text") return Format::kText;
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  return std::nullopt;
}

std::string render(const AuditReport& report, Format format) {
  switch (format) {
    case Format::kText: return render_text(report);
    case Format::kCsv: return render_csv(report);
    case Format::kJson: return render_json(report);
  }
  return {};
}

std::string render_text(const AuditReport& r) {
  std::string out;
  auto line = [&out](std::string_view s) {
    out.append(s);
    out.push_back('\n');
  };
  const auto& groups = registry::kStakeholderGroups;

  line("ACARS privacy audit");
  line("");
  const CounterCell all = r.cell({});
  line(fmt::format("Messages: {}   Aircraft: {}   Blocked aircraft: {}",
                   with_commas(all.messages.size()), with_commas(all.aircraft.size()),
                   with_commas(all.blocked_aircraft.size())));
  line("");
  line(fmt::format("{}{}{}", pad("Link", 18), pad("Messages (% total)", 24), "Aircraft"));
  for (const auto& g : link_groups()) {
    const auto cell = gather(r, std::nullopt, std::nullopt, g.links);
    if (cell.messages.empty()) continue;
    line(fmt::format("{}{}{}", pad(g.name, 18),
                     pad(count_pct(cell.messages.size(), all.messages.size(), 1), 24),
                     with_commas(cell.aircraft.size())));
  }

  std::size_t fleet_total = 0, fleet_blocked = 0;
  for (auto s : groups) {
    fleet_total += fleet_size(r, s, false);
    fleet_blocked += fleet_size(r, s, true);
  }
  line("");
  line("Stakeholder groups");
  line(fmt::format("{}{}{}", pad("Stakeholder type", 20), pad("Aircraft (% total)", 24),
                   "Blocked aircraft (% group)"));
  for (auto s : groups) {
    const auto n = fleet_size(r, s, false);
    line(fmt::format("{}{}{}", pad(registry::display_name(s), 20),
                     pad(count_pct(n, fleet_total, 2), 24),
                     count_pct(fleet_size(r, s, true), n, 2)));
  }
  line(fmt::format("{}{}{}", pad("All", 20), pad(count_pct(fleet_total, fleet_total, 2), 24),
                   count_pct(fleet_blocked, fleet_total, 2)));
  if (const auto unknown = fleet_size(r, StakeholderClass::kUnknown, false); unknown > 0) {
    line(fmt::format("Unclassified registry entries (not in totals): {}", with_commas(unknown)));
  }

  line("");
  line(fmt::format("Off-shore registrations, business aircraft (more than {})",
                   audit::kDefaultOffshoreThreshold));
  line(fmt::format("{}{}", pad("Territory", 26), "Aircraft"));
  for (const auto& row : audit::offshore_summary(r)) {
    line(fmt::format("{}{}", pad(row.territory, 26), with_commas(row.count)));
  }

  line("");
  line("Privacy requirements and breaches");
  std::string head1 = pad("", 14), head2 = pad("", 14);
  for (auto c : audit::kConcepts) {
    head1 += pad(audit::display_name(c), 20);
    head2 += pad("Required", 10) + pad("Breached", 10);
  }
  line(head1);
  line(head2);
  for (auto s : groups) {
    std::string row = pad(registry::display_name(s), 14);
    for (auto c : audit::kConcepts) {
      row += pad(requirement_cell(r, s, c), 10) + pad(breach_cell(r, s, c), 10);
    }
    line(row);
  }
  if (r.requirements.military_existence_caveat) {
    line("* assuming an operational flight, not training");
  }
  line("X explicit breach, V evidence of a breach, N no evidence, N/A no requirement");

  for (auto s : groups) {
    const auto group_all = gather(r, s, std::nullopt, {});
    if (group_all.messages.empty()) continue;
    for (const auto& g : link_groups()) {
      const auto base = gather(r, s, std::nullopt, g.links);
      if (base.messages.empty()) continue;
      line("");
      line(fmt::format("{} aircraft on {}: {} aircraft, {} messages (group total {} aircraft, "
                       "{} messages)",
                       registry::display_name(s), g.name, with_commas(base.aircraft.size()),
                       with_commas(base.messages.size()), with_commas(group_all.aircraft.size()),
                       with_commas(group_all.messages.size())));
      line(fmt::format("{}{}{}{}{}", pad("Category", 20), pad("Aircraft", 26),
                       pad("Blocked A/C", 26), pad("Messages", 26), "Msg. from blocked A/C"));
      auto both = [](std::size_t n, std::size_t link_den, std::size_t group_den) {
        return fmt::format("{} ({} / {})", with_commas(n), audit::percent(n, link_den, 1),
                           audit::percent(n, group_den, 1));
      };
      for (auto cat : content::all_categories()) {
        const auto cell = gather(r, s, cat, g.links);
        if (cell.messages.empty()) continue;
        line(fmt::format(
            "{}{}{}{}{}", pad(content::to_string(cat), 20),
            pad(both(cell.aircraft.size(), base.aircraft.size(), group_all.aircraft.size()), 26),
            pad(both(cell.blocked_aircraft.size(), base.aircraft.size(),
                     group_all.aircraft.size()),
                26),
            pad(both(cell.messages.size(), base.messages.size(), group_all.messages.size()), 26),
            both(cell.blocked_messages.size(), base.messages.size(),
                 group_all.messages.size())));
      }
    }
  }
  if (!r.provenance.empty()) {
    line("");
    line("Provenance (SHA-256)");
    for (const auto& [name, hash] : r.provenance) line(fmt::format("  {}  {}", hash, name));
  }
  return out;
}

std::string render_csv(const AuditReport& r) {
  std::string out = "table,stakeholder,link,row,column,value\n";
  auto row = [&out](std::string_view table, std::string_view s, std::string_view l,
                    std::string_view name, std::string_view col, std::string_view value) {
    out += fmt::format("{},{},{},{},{},{}\n", table, csv_escape(s), csv_escape(l),
                       csv_escape(name), csv_escape(col), csv_escape(value));
  };
  for (auto s : registry::kStakeholderGroups) {
    for (auto c : audit::kConcepts) {
      row("grades", registry::to_string(s), "", audit::to_string(c), "required",
          audit::to_string(r.requirements.at(s, c)));
      row("grades", registry::to_string(s), "", audit::to_string(c), "breached",
          breach_cell(r, s, c));
    }
  }
  for (const auto& [s, cell] : r.fleet) {
    row("fleet", registry::to_string(s), "", "aircraft", "count",
        std::to_string(cell.aircraft.size()));
    row("fleet", registry::to_string(s), "", "blocked", "count",
        std::to_string(cell.blocked.size()));
  }
  for (const auto& o : audit::offshore_summary(r)) {
    row("offshore", "BUSINESS", "", o.territory, "count", std::to_string(o.count));
  }
  for (const auto& [key, cell] : r.counters) {
    const auto s = opt_name(key.stakeholder), l = opt_name(key.link), c = opt_name(key.category);
    row("counters", s, l, c, "aircraft", std::to_string(cell.aircraft.size()));
    row("counters", s, l, c, "blocked_aircraft", std::to_string(cell.blocked_aircraft.size()));
    row("counters", s, l, c, "messages", std::to_string(cell.messages.size()));
    row("counters", s, l, c, "blocked_messages", std::to_string(cell.blocked_messages.size()));
  }
  for (const auto& [name, hash] : r.provenance) row("provenance", "", "", name, "sha256", hash);
  return out;
}

std::string render_json(const AuditReport& r) {
  json j;
  json matrix = json::array();
  for (auto s : registry::kStakeholderGroups) {
    json row;
    row["stakeholder"] = registry::to_string(s);
    for (auto c : audit::kConcepts) {
      row[std::string(audit::to_string(c))] = {
          {"required", audit::to_string(r.requirements.at(s, c))},
          {"grade", audit::to_string(r.grade(s, c))},
          {"cell", breach_cell(r, s, c)}};
    }
    matrix.push_back(std::move(row));
  }
  j["grade_matrix"] = std::move(matrix);
  j["unknown_stakeholder_grades"] = json::object();
  for (auto c : audit::kConcepts) {
    j["unknown_stakeholder_grades"][std::string(audit::to_string(c))] =
        audit::to_string(r.grade(StakeholderClass::kUnknown, c));
  }
  json fleet = json::object();
  for (const auto& [s, cell] : r.fleet) {
    fleet[std::string(registry::to_string(s))] = {{"aircraft", cell.aircraft.size()},
                                                  {"blocked", cell.blocked.size()}};
  }
  j["fleet"] = std::move(fleet);
  json offshore = json::array();
  for (const auto& o : audit::offshore_summary(r))
    offshore.push_back({{"territory", o.territory}, {"aircraft", o.count}});
  j["offshore"] = std::move(offshore);
  json counters = json::array();
  for (const auto& [key, cell] : r.counters) {
    counters.push_back({{"stakeholder", opt_name(key.stakeholder)},
                        {"link", opt_name(key.link)},
                        {"category", opt_name(key.category)},
                        {"aircraft", cell.aircraft.size()},
                        {"blocked_aircraft", cell.blocked_aircraft.size()},
                        {"messages", cell.messages.size()},
                        {"blocked_messages", cell.blocked_messages.size()}});
  }
  j["counters"] = std::move(counters);
  j["provenance"] = r.provenance;
  return j.dump(2) + "\n";
}

std::string findings_csv(std::span<const MessageOutcome> outcomes) {
  std::string out(kFindingsCsvHeader);
  out.push_back('\n');
  for (const auto& o : outcomes) {
    const auto& ctx = o.ctx;
    const std::string blocked = ctx.block ? std::string(registry::to_string(*ctx.block)) : "";
    for (const auto& f : o.findings) {
      const std::string ents = entities_json(f.entities).dump();
      for (const auto& [concept_, grade] : audit::concept_of(f, ctx.direction)) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", csv_escape(ctx.record_id),
                           json(ctx.timestamp).dump(), ingest::to_string(ctx.link),
                           csv_escape(ctx.registration), registry::to_string(ctx.stakeholder),
                           blocked, content::to_string(f.category),
                           audit::to_string(concept_), audit::to_string(grade),
                           csv_escape(ents));
      }
    }
  }
  return out;
}

std::string to_json_line(const MessageOutcome& o) {
  const auto& ctx = o.ctx;
  json j;
  j["record_id"] = ctx.record_id;
  j["ts"] = ctx.timestamp;
  j["link"] = ingest::to_string(ctx.link);
  j["dir"] = ingest::to_string(ctx.direction);
  j["registration"] = ctx.registration;
  j["stakeholder"] = registry::to_string(ctx.stakeholder);
  j["rule_id"] = ctx.rule_id;
  if (ctx.block) j["block"] = registry::to_string(*ctx.block);
  j["country"] = ctx.country;
  j["registrant_kind"] = registry::to_string(ctx.registrant_kind);
  if (o.parse_error) j["parse_error"] = *o.parse_error;
  json fs = json::array();
  for (const auto& f : o.findings) fs.push_back(finding_json(f));
  j["findings"] = std::move(fs);
  return j.dump();
}

std::string findings_jsonl(std::span<const MessageOutcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    out += to_json_line(o);
    out.push_back('\n');
  }
  return out;
}

MessageOutcome parse_json_line(std::string_view line) {
  const json j = json::parse(line);
  MessageOutcome o;
  auto& ctx = o.ctx;
  ctx.record_id = require<std::string>(j, "record_id");
  ctx.timestamp = require<double>(j, "ts");
  const auto link = ingest::parse_link(require<std::string>(j, "link"));
  if (!link) throw std::invalid_argument("unknown link");
  ctx.link = *link;
  const auto dir = ingest::parse_direction(require<std::string>(j, "dir"));
  if (!dir) throw std::invalid_argument("unknown direction");
  ctx.direction = *dir;
  ctx.registration = require<std::string>(j, "registration");
  const auto s = registry::parse_stakeholder(require<std::string>(j, "stakeholder"));
  if (!s) throw std::invalid_argument("unknown stakeholder");
  ctx.stakeholder = *s;
  ctx.rule_id = require<std::string>(j, "rule_id");
  if (j.contains("block")) {
    const auto b = j["block"].get<std::string>();
    if (b == "AGENCY") ctx.block = registry::BlockLevel::kAgency;
    else if (b == "SUBSCRIBER") ctx.block = registry::BlockLevel::kSubscriber;
    else throw std::invalid_argument("unknown block level");
  }
  ctx.country = require<std::string>(j, "country");
  const auto kind = registry::parse_registrant_kind(require<std::string>(j, "registrant_kind"));
  if (!kind) throw std::invalid_argument("unknown registrant kind");
  ctx.registrant_kind = *kind;
  if (j.contains("parse_error")) o.parse_error = j["parse_error"].get<std::string>();
  for (const auto& f : j.at("findings")) o.findings.push_back(finding_from_json(f, ctx.record_id));
  return o;
}

std::vector<MessageOutcome> read_findings_jsonl(const std::filesystem::path& path) {
  const std::string contents = read_file(path);
  std::vector<MessageOutcome> out;
  std::size_t line_no = 0;
  for (const auto& line : split(contents, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const std::exception& e) {
      throw SchemaError(path.string(), line_no, e.what());
    }
  }
  return out;
}

std::string_view to_string(RedactAction a) {
  switch (a) {
    case RedactAction::kKeep: return "KEEP";
    case RedactAction::kMask: return "MASK";
    case RedactAction::kPseudonym: return "PSEUDONYM";
  }
  return "?";
}

std::optional<RedactAction> parse_redact_action(std::string_view s) {
  for (auto a : {RedactAction::kKeep, RedactAction::kMask, RedactAction::kPseudonym})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

RedactionPolicy RedactionPolicy::defaults() {
  RedactionPolicy p;
  p.rules[EntityKind::kPan] = RedactAction::kMask;
  p.rules[EntityKind::kCvv] = RedactAction::kMask;
  return p;
}

RedactionPolicy RedactionPolicy::load(const std::filesystem::path& path, std::string key) {
  RedactionPolicy p;
  p.key = std::move(key);
  std::size_t line_no = 0;
  for (const auto& raw : split(read_file(path), '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw SchemaError(path.string(), line_no, "expected KIND=ACTION");
    }
    const auto kind_name = to_upper(trim(line.substr(0, eq)));
    const auto action = parse_redact_action(to_upper(trim(line.substr(eq + 1))));
    if (!action) throw SchemaError(path.string(), line_no, "action must be KEEP, MASK or PSEUDONYM");
    if (kind_name == "*") {
      p.fallback = *action;
      continue;
    }
    const auto kind = content::parse_entity_kind(kind_name);
    if (!kind) throw SchemaError(path.string(), line_no, "unknown entity kind '" + kind_name + "'");
    p.rules[*kind] = *action;
  }
  return p;
}

RedactAction RedactionPolicy::action(EntityKind kind) const {
  const auto it = rules.find(kind);
  return it == rules.end() ? fallback : it->second;
}

bool RedactionPolicy::needs_key() const {
  if (fallback == RedactAction::kPseudonym) return true;
  return std::any_of(rules.begin(), rules.end(),
                     [](const auto& kv) { return kv.second == RedactAction::kPseudonym; });
}

void RedactionPolicy::validate() const {
  if (needs_key() && key.empty()) {
    throw ConfigError(
        "redaction policy uses PSEUDONYM but no key was given (--key-file or ACARS_AUDIT_KEY)");
  }
}

std::string mask_value(EntityKind kind, std::string_view value) {
  if (kind == EntityKind::kPan && value.size() > 4) {
    return std::string(value.size() - 4, '*') + std::string(value.substr(value.size() - 4));
  }
  return std::string(value.size(), '*');
}

std::string pseudonym(std::string_view key, EntityKind kind, std::string_view value) {
  std::string msg(content::to_string(kind));
  msg.push_back('\0');
  msg.append(value);
  return hmac_sha256_hex(key, msg).substr(0, 8);
}

Finding redact(const Finding& finding, const RedactionPolicy& policy) {
  policy.validate();
  Finding out = finding;
  for (auto& e : out.entities) {
    if (e.redacted) continue;
    const auto action = policy.action(e.kind);
    if (action == RedactAction::kKeep) continue;
    e.value = action == RedactAction::kMask ? mask_value(e.kind, e.value)
                                            : pseudonym(policy.key, e.kind, e.value);
    e.redacted = true;
    if (e.kind == EntityKind::kPosition) out.position.reset();
  }
  for (auto& d : out.derived) d = redact(d, policy);
  return out;
}

std::vector<Finding> redact(std::span<const Finding> findings, const RedactionPolicy& policy) {
  std::vector<Finding> out;
  out.reserve(findings.size());
  for (const auto& f : findings) out.push_back(redact(f, policy));
  return out;
}

std::vector<MessageOutcome> redact(std::span<const MessageOutcome> outcomes,
                                   const RedactionPolicy& policy) {
  std::vector<MessageOutcome> out(outcomes.begin(), outcomes.end());
  for (auto& o : out)
    for (auto& f : o.findings) f = redact(f, policy);
  return out;
}

}  // namespace acars_audit::report
