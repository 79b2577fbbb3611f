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

// Privacy-sensitive content detectors. All detectors work on the
// uppercased message text, so entity spans index the original text.

#ifndef ACARS_AUDIT_CONTENT_HPP_
#define ACARS_AUDIT_CONTENT_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "acars_audit/frame.hpp"
#include "acars_audit/labels.hpp"

namespace acars_audit::content {

enum class Category {
  kPositionReport,
  kClearance,
  kAtisRequest,
  kFlightPlan,
  kWeatherReport,
  kCardFull,
  kCardPartial,
  kCardContext,
  kMedicalFull,
  kMedicalContext,
  kPassengerManifest,
  kEmailAddress,
  kEncryptedWeak,
  kExistenceOnly,
};
inline constexpr std::size_t kCategoryCount = 14;

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view s);
/// Every category, in declaration order.
const std::vector<Category>& all_categories();

bool is_intention(Category c);
bool is_passenger(Category c);

enum class Confidence { kHigh, kMedium, kLow };
std::string_view to_string(Confidence c);
std::optional<Confidence> parse_confidence(std::string_view s);

enum class EntityKind {
  kPosition,
  kOrigin,
  kDestination,
  kPan,
  kMaskedPan,
  kCvv,
  kExpiry,
  kAmount,
  kAuthCode,
  kAuthOutcome,
  kPersonName,
  kCondition,
  kMedicalLogistics,
  kSeat,
  kFlight,
  kConnection,
  kSolicitation,
  kEmail,
};
std::string_view to_string(EntityKind k);
std::optional<EntityKind> parse_entity_kind(std::string_view s);

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct Entity {
  EntityKind kind = EntityKind::kPersonName;
  std::string value;
  Span span;
  bool redacted = false;
  int group = -1;  // manifest tuple index, -1 when ungrouped

  bool operator==(const Entity&) const = default;
};

struct Position {
  double lat = 0.0;
  double lon = 0.0;

  bool operator==(const Position&) const = default;
};

struct Finding {
  Category category = Category::kExistenceOnly;
  std::vector<Entity> entities;
  Confidence confidence = Confidence::kHigh;
  std::string record_id;
  std::optional<Position> position;
  /// Findings recovered from deciphered text (ENCRYPTED_WEAK only).
  std::vector<Finding> derived;

  bool has_entity(EntityKind kind) const;
  std::size_t count(EntityKind kind) const;
  bool operator==(const Finding&) const = default;
};

/// Word lists the detectors consult. All entries are uppercase.
struct Lexicon {
  std::set<std::string> aerodromes;  // 4-letter ICAO designators
  std::set<std::string> iata_codes;
  std::set<std::string> surnames;
  std::set<std::string> name_stopwords;
  std::set<std::string> medical_conditions;  // may hold multi-word phrases
  std::set<std::string> medical_logistics;

  /// Reads medical_conditions.txt, medical_logistics.txt, surnames.txt,
  /// name_stopwords.txt and iata_codes.txt from `keywords_dir`.
  static Lexicon load(const std::filesystem::path& keywords_dir,
                      const std::filesystem::path& gazetteer);
  static Lexicon load_default();
};

// Position patterns: hemisphere-prefixed decimal degrees (N47.46 E008.54)
// and degrees + decimal minutes (N 47 27.6 E 008 32.7).
std::optional<Position> parse_position(std::string_view text);
std::string format_position_decimal(const Position& p);
std::string format_position_dm(const Position& p);

/// Mod-10 checksum. Throws std::invalid_argument unless `digits` is 12 to 19
/// ASCII digits.
bool luhn_valid(std::string_view digits);

/// Person names in SURNAME/INITIAL form or built around a listed surname.
std::vector<Entity> find_person_names(std::string_view text, const Lexicon& lex);

std::optional<Finding> detect_position(std::string_view text);
std::optional<Finding> detect_intention(std::string_view text,
                                        frame::LabelCategory label_category,
                                        const Lexicon& lex);
inline constexpr std::size_t kCardProximity = 80;
std::optional<Finding> detect_card(std::string_view text, const Lexicon& lex);
std::optional<Finding> detect_medical(std::string_view text, const Lexicon& lex);
std::optional<Finding> detect_passenger_manifest(std::string_view text,
                                                 const Lexicon& lex);
std::optional<Finding> detect_email(std::string_view text);

/// Runs every content detector; result order follows Category order. Does
/// not emit ENCRYPTED_WEAK or EXISTENCE_ONLY.
std::vector<Finding> detect_content(std::string_view text,
                                    frame::LabelCategory label_category,
                                    const Lexicon& lex,
                                    std::string_view record_id = {});

inline std::vector<Finding> detect_content(const frame::AcarsMessage& msg,
                                           frame::LabelCategory label_category,
                                           const Lexicon& lex) {
  return detect_content(msg.text, label_category, lex, msg.source);
}

}  // namespace acars_audit::content

#endif  // ACARS_AUDIT_CONTENT_HPP_
