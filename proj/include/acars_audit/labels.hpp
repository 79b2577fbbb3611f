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

#ifndef ACARS_AUDIT_LABELS_HPP_
#define ACARS_AUDIT_LABELS_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acars_audit::frame {

/// Service category a label routes to.
enum class LabelCategory {
  kPosition,
  kClearance,
  kAtisRequest,
  kFlightPlan,
  kWeather,
  kFreeText,
  kMaintenance,
  kLoadsheet,
  kMediaAdvisory,
  kNetworkMgmt,
  kOther,
};

std::string_view to_string(LabelCategory c);
std::optional<LabelCategory> parse_label_category(std::string_view s);

struct LabelEntry {
  std::string label;
  LabelCategory category = LabelCategory::kOther;
  std::string description;

  bool operator==(const LabelEntry&) const = default;
};

/// Read-only label table. Loaded from `label,category,description` CSV.
class LabelRegistry {
 public:
  LabelRegistry() = default;
  /// Throws std::invalid_argument on a duplicate or malformed label.
  explicit LabelRegistry(std::vector<LabelEntry> entries);

  /// Throws IoError / SchemaError (duplicate labels are schema errors).
  static LabelRegistry load(const std::filesystem::path& path);

  /// Total: unknown labels get an OTHER entry carrying the queried label.
  LabelEntry lookup(std::string_view label) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, LabelEntry, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, LabelEntry, std::less<>> entries_;
};

inline LabelEntry lookup_label(std::string_view label,
                               const LabelRegistry& registry) {
  return registry.lookup(label);
}

}  // namespace acars_audit::frame

#endif  // ACARS_AUDIT_LABELS_HPP_
