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

#include "acars_audit/labels.hpp"

#include <array>
#include <stdexcept>

#include "acars_audit/csv.hpp"
#include "acars_audit/errors.hpp"
#include "acars_audit/frame.hpp"

namespace acars_audit::frame {
namespace {

constexpr std::array<std::pair<LabelCategory, std::string_view>, 11> kNames = {{
    {LabelCategory::kPosition, "POSITION"},
    {LabelCategory::kClearance, "CLEARANCE"},
    {LabelCategory::kAtisRequest, "ATIS_REQUEST"},
    {LabelCategory::kFlightPlan, "FLIGHT_PLAN"},
    {LabelCategory::kWeather, "WEATHER"},
    {LabelCategory::kFreeText, "FREE_TEXT"},
    {LabelCategory::kMaintenance, "MAINTENANCE"},
    {LabelCategory::kLoadsheet, "LOADSHEET"},
    {LabelCategory::kMediaAdvisory, "MEDIA_ADVISORY"},
    {LabelCategory::kNetworkMgmt, "NETWORK_MGMT"},
    {LabelCategory::kOther, "OTHER"},
}};

}  // namespace

std::string_view to_string(LabelCategory c) {
  for (const auto& [cat, name] : kNames)
    if (cat == c) return name;
  return "OTHER";
}

std::optional<LabelCategory> parse_label_category(std::string_view s) {
  for (const auto& [cat, name] : kNames)
    if (name == s) return cat;
  return std::nullopt;
}

LabelRegistry::LabelRegistry(std::vector<LabelEntry> entries) {
  for (auto& e : entries) {
    if (!is_valid_label(e.label)) throw std::invalid_argument("bad label '" + e.label + "'");
    const std::string key = e.label;
    if (!entries_.emplace(key, std::move(e)).second) {
      throw std::invalid_argument("duplicate label '" + key + "'");
    }
  }
}

LabelRegistry LabelRegistry::load(const std::filesystem::path& path) {
  LabelRegistry out;
  for (auto& row : read_csv(path, {"label", "category", "description"})) {
    const auto& label = row.fields[0];
    if (!is_valid_label(label)) {
      throw SchemaError(path.string(), row.line, "invalid label '" + label + "'");
    }
    const auto category = parse_label_category(row.fields[1]);
    if (!category) {
      throw SchemaError(path.string(), row.line,
                        "unknown category '" + row.fields[1] + "'");
    }
    LabelEntry entry{label, *category, row.fields[2]};
    if (!out.entries_.emplace(label, std::move(entry)).second) {
      throw SchemaError(path.string(), row.line, "duplicate label '" + label + "'");
    }
  }
  return out;
}

LabelEntry LabelRegistry::lookup(std::string_view label) const {
  if (const auto it = entries_.find(label); it != entries_.end()) return it->second;
  return LabelEntry{std::string(label), LabelCategory::kOther, "unregistered label"};
}

}  // namespace acars_audit::frame
