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

#include "acars_audit/content.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <regex>
#include <stdexcept>
#include <utility>

#include "acars_audit/text.hpp"

namespace acars_audit::content {
namespace {

constexpr std::array<std::pair<Category, std::string_view>, kCategoryCount>
    kCategoryNames = {{
        {Category::kPositionReport, "POSITION_REPORT"},
        {Category::kClearance, "CLEARANCE"},
        {Category::kAtisRequest, "ATIS_REQUEST"},
        {Category::kFlightPlan, "FLIGHT_PLAN"},
        {Category::kWeatherReport, "WEATHER_REPORT"},
        {Category::kCardFull, "CARD_FULL"},
        {Category::kCardPartial, "CARD_PARTIAL"},
        {Category::kCardContext, "CARD_CONTEXT"},
        {Category::kMedicalFull, "MEDICAL_FULL"},
        {Category::kMedicalContext, "MEDICAL_CONTEXT"},
        {Category::kPassengerManifest, "PASSENGER_MANIFEST"},
        {Category::kEmailAddress, "EMAIL_ADDRESS"},
        {Category::kEncryptedWeak, "ENCRYPTED_WEAK"},
        {Category::kExistenceOnly, "EXISTENCE_ONLY"},
    }};

constexpr std::array<std::pair<EntityKind, std::string_view>, 18> kEntityNames = {{
    {EntityKind::kPosition, "POSITION"},
    {EntityKind::kOrigin, "ORIGIN"},
    {EntityKind::kDestination, "DESTINATION"},
    {EntityKind::kPan, "PAN"},
    {EntityKind::kMaskedPan, "MASKED_PAN"},
    {EntityKind::kCvv, "CVV"},
    {EntityKind::kExpiry, "EXPIRY"},
    {EntityKind::kAmount, "AMOUNT"},
    {EntityKind::kAuthCode, "AUTH_CODE"},
    {EntityKind::kAuthOutcome, "AUTH_OUTCOME"},
    {EntityKind::kPersonName, "PERSON_NAME"},
    {EntityKind::kCondition, "CONDITION"},
    {EntityKind::kMedicalLogistics, "MEDICAL_LOGISTICS"},
    {EntityKind::kSeat, "SEAT"},
    {EntityKind::kFlight, "FLIGHT"},
    {EntityKind::kConnection, "CONNECTION"},
    {EntityKind::kSolicitation, "SOLICITATION"},
    {EntityKind::kEmail, "EMAIL"},
}};

constexpr auto kFlags = std::regex::ECMAScript | std::regex::optimize;

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// True when [b, e) is not glued to neighbouring letters or digits.
bool bounded(std::string_view s, std::size_t b, std::size_t e) {
  return (b == 0 || !is_alnum(s[b - 1])) && (e >= s.size() || !is_alnum(s[e]));
}

template <class F>
void for_each_match(const std::regex& re, const std::string& s, F&& f) {
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator();
       ++it) {
    f(*it);
  }
}

std::size_t gap(const Span& a, const Span& b) {
  const auto lo = std::max(a.begin, b.begin);
  const auto hi = std::min(a.end, b.end);
  return lo > hi ? lo - hi : 0;
}

Entity make_entity(EntityKind kind, std::string value, std::size_t b, std::size_t e) {
  return Entity{kind, std::move(value), Span{b, e}, false, -1};
}

Entity slice_entity(EntityKind kind, std::string_view text, std::size_t b, std::size_t e) {
  return make_entity(kind, std::string(text.substr(b, e - b)), b, e);
}

// Occurrences of each listed phrase as whole words.
std::vector<Entity> find_phrases(std::string_view original, const std::string& upper,
                                 const std::set<std::string>& phrases, EntityKind kind) {
  std::vector<Entity> out;
  for (const auto& p : phrases) {
    if (p.empty()) continue;
    for (auto pos = upper.find(p); pos != std::string::npos; pos = upper.find(p, pos + 1)) {
      if (bounded(upper, pos, pos + p.size())) {
        out.push_back(slice_entity(kind, original, pos, pos + p.size()));
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Entity& a, const Entity& b) { return a.span.begin < b.span.begin; });
  return out;
}

struct PositionMatch {
  Position pos;
  Span span;
};

std::optional<PositionMatch> first_position(const std::string& upper) {
  static const std::regex dm(
      R"(([NS]) ?(\d{1,2}) (\d{1,2}(?:\.\d+)?)[ ,/]*([EW]) ?(\d{1,3}) (\d{1,2}(?:\.\d+)?))",
      kFlags);
  static const std::regex dec(R"(([NS]) ?(\d{1,2}\.\d+)[ ,/]*([EW]) ?(\d{1,3}\.\d+))", kFlags);
  std::optional<PositionMatch> best;
  auto consider = [&](std::size_t b, std::size_t e, double lat, double lon) {
    if (!bounded(upper, b, e) || std::fabs(lat) > 90.0 || std::fabs(lon) > 180.0) return;
    if (best && best->span.begin <= b) return;
    best = PositionMatch{{lat, lon}, {b, e}};
  };
  for_each_match(dm, upper, [&](const std::smatch& m) {
    const double lat_min = std::stod(m[3]);
    const double lon_min = std::stod(m[6]);
    if (lat_min >= 60.0 || lon_min >= 60.0) return;
    double lat = std::stod(m[2]) + lat_min / 60.0;
    double lon = std::stod(m[5]) + lon_min / 60.0;
    if (m[1] == "S") lat = -lat;
    if (m[4] == "W") lon = -lon;
    consider(m.position(0), m.position(0) + m.length(0), lat, lon);
  });
  for_each_match(dec, upper, [&](const std::smatch& m) {
    double lat = std::stod(m[2]);
    double lon = std::stod(m[4]);
    if (m[1] == "S") lat = -lat;
    if (m[3] == "W") lon = -lon;
    consider(m.position(0), m.position(0) + m.length(0), lat, lon);
  });
  return best;
}

bool all_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalpha(c) != 0;
  });
}

bool is_place_code(std::string_view tok, const Lexicon& lex) {
  const std::string t(tok);
  return lex.aerodromes.contains(t) || lex.iata_codes.contains(t);
}

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [cat, name] : kCategoryNames)
    if (cat == c) return name;
  return "EXISTENCE_ONLY";
}

std::optional<Category> parse_category(std::string_view s) {
  for (const auto& [cat, name] : kCategoryNames)
    if (name == s) return cat;
  return std::nullopt;
}

const std::vector<Category>& all_categories() {
  static const std::vector<Category> all = [] {
    std::vector<Category> v;
    for (const auto& [cat, name] : kCategoryNames) v.push_back(cat);
    return v;
  }();
  return all;
}

bool is_intention(Category c) {
  return c == Category::kClearance || c == Category::kAtisRequest ||
         c == Category::kFlightPlan || c == Category::kWeatherReport;
}

bool is_passenger(Category c) {
  switch (c) {
    case Category::kCardFull:
    case Category::kCardPartial:
    case Category::kCardContext:
    case Category::kMedicalFull:
    case Category::kMedicalContext:
    case Category::kPassengerManifest:
    case Category::kEmailAddress:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(Confidence c) {
  switch (c) {
    case Confidence::kHigh: return "high";
    case Confidence::kMedium: return "medium";
    case Confidence::kLow: return "low";
  }
  return "low";
}

std::optional<Confidence> parse_confidence(std::string_view s) {
  if (s == "high") return Confidence::kHigh;
  if (s == "medium") return Confidence::kMedium;
  if (s == "low") return Confidence::kLow;
  return std::nullopt;
}

std::string_view to_string(EntityKind k) {
  for (const auto& [kind, name] : kEntityNames)
    if (kind == k) return name;
  return "?";
}

std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  for (const auto& [kind, name] : kEntityNames)
    if (name == s) return kind;
  return std::nullopt;
}

bool Finding::has_entity(EntityKind kind) const { return count(kind) > 0; }

std::size_t Finding::count(EntityKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      entities.begin(), entities.end(), [kind](const Entity& e) { return e.kind == kind; }));
}

Lexicon Lexicon::load(const std::filesystem::path& keywords_dir,
                      const std::filesystem::path& gazetteer) {
  Lexicon lex;
  lex.aerodromes = read_word_list(gazetteer);
  lex.iata_codes = read_word_list(keywords_dir / "iata_codes.txt");
  lex.surnames = read_word_list(keywords_dir / "surnames.txt");
  lex.name_stopwords = read_word_list(keywords_dir / "name_stopwords.txt");
  lex.medical_conditions = read_word_list(keywords_dir / "medical_conditions.txt");
  lex.medical_logistics = read_word_list(keywords_dir / "medical_logistics.txt");
  return lex;
}

Lexicon Lexicon::load_default() {
  const std::filesystem::path data(ACARS_AUDIT_DATA_DIR);
  return load(data / "keywords", data / "aerodromes.txt");
}

std::optional<Position> parse_position(std::string_view text) {
  const auto m = first_position(to_upper(text));
  if (!m) return std::nullopt;
  return m->pos;
}

std::string format_position_decimal(const Position& p) {
  return fmt::format("{}{:010.7f} {}{:011.7f}", p.lat < 0 ? 'S' : 'N', std::fabs(p.lat),
                     p.lon < 0 ? 'W' : 'E', std::fabs(p.lon));
}

std::string format_position_dm(const Position& p) {
  constexpr long long kUnitsPerMinute = 100000;
  constexpr long long kUnitsPerDegree = 60 * kUnitsPerMinute;
  auto part = [&](double v, int width) {
    const long long units = std::llround(std::fabs(v) * kUnitsPerDegree);
    const long long deg = units / kUnitsPerDegree;
    const long long rem = units % kUnitsPerDegree;
    return fmt::format("{:0{}d} {:02d}.{:05d}", deg, width, rem / kUnitsPerMinute,
                       rem % kUnitsPerMinute);
  };
  return fmt::format("{} {} {} {}", p.lat < 0 ? 'S' : 'N', part(p.lat, 2),
                     p.lon < 0 ? 'W' : 'E', part(p.lon, 3));
}

bool luhn_valid(std::string_view digits) {
  if (digits.size() < 12 || digits.size() > 19 || !is_digits(digits)) {
    throw std::invalid_argument("luhn_valid expects 12 to 19 digits");
  }
  int sum = 0;
  bool dbl = false;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    int d = *it - '0';
    if (dbl) {
      d *= 2;
      if (d > 9) d -= 9;
    }
    sum += d;
    dbl = !dbl;
  }
  return sum % 10 == 0;
}

std::vector<Entity> find_person_names(std::string_view text, const Lexicon& lex) {
  static const std::regex slash(R"(\b([A-Z]{2,20})/([A-Z]{1,12})\b)", kFlags);
  const std::string upper = to_upper(text);
  std::vector<Entity> out;
  for_each_match(slash, upper, [&](const std::smatch& m) {
    const std::size_t b = m.position(0), e = b + m.length(0);
    if ((b > 0 && upper[b - 1] == '/') || (e < upper.size() && upper[e] == '/')) return;
    const std::string sur = m[1], given = m[2];
    if (lex.name_stopwords.contains(sur) || lex.name_stopwords.contains(given)) return;
    if (is_place_code(sur, lex) || is_place_code(given, lex)) return;
    out.push_back(slice_entity(EntityKind::kPersonName, text, b, e));
  });
  const auto tokens = alnum_tokens(upper);
  auto covered = [&](std::size_t pos) {
    return std::any_of(out.begin(), out.end(), [pos](const Entity& e) {
      return pos >= e.span.begin && pos < e.span.end;
    });
  };
  const std::size_t slash_count = out.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (!lex.surnames.contains(std::string(tok.text)) || covered(tok.begin)) continue;
    std::size_t b = tok.begin;
    if (i > 0) {
      const auto& prev = tokens[i - 1];
      const bool adjacent = prev.end() + 1 == tok.begin && upper[prev.end()] == ' ';
      const std::string p(prev.text);
      if (adjacent && prev.text.size() >= 2 && all_alpha(prev.text) &&
          !lex.name_stopwords.contains(p) && !is_place_code(p, lex) &&
          !lex.surnames.contains(p) && !covered(prev.begin)) {
        b = prev.begin;
      }
    }
    out.push_back(slice_entity(EntityKind::kPersonName, text, b, tok.end()));
  }
  if (slash_count != out.size()) {
    std::sort(out.begin(), out.end(),
              [](const Entity& a, const Entity& b) { return a.span.begin < b.span.begin; });
  }
  return out;
}

std::optional<Finding> detect_position(std::string_view text) {
  const auto m = first_position(to_upper(text));
  if (!m) return std::nullopt;
  Finding f;
  f.category = Category::kPositionReport;
  f.position = m->pos;
  f.entities.push_back(make_entity(EntityKind::kPosition,
                                   fmt::format("{:.7f},{:.7f}", m->pos.lat, m->pos.lon),
                                   m->span.begin, m->span.end));
  return f;
}

std::optional<Finding> detect_intention(std::string_view text,
                                        frame::LabelCategory label_category,
                                        const Lexicon& lex) {
  using frame::LabelCategory;
  const std::string upper = to_upper(text);
  const auto tokens = alnum_tokens(upper);

  std::optional<Category> cat;
  switch (label_category) {
    case LabelCategory::kAtisRequest: cat = Category::kAtisRequest; break;
    case LabelCategory::kClearance: cat = Category::kClearance; break;
    case LabelCategory::kFlightPlan: cat = Category::kFlightPlan; break;
    case LabelCategory::kWeather: cat = Category::kWeatherReport; break;
    default: break;
  }
  if (!cat) {
    static const std::set<std::string, std::less<>> atis = {"ATIS"};
    static const std::set<std::string, std::less<>> clearance = {"CLRNC", "CLEARANCE", "PDC"};
    static const std::set<std::string, std::less<>> plan = {"FPN", "FPL", "FLTPLN"};
    static const std::set<std::string, std::less<>> weather = {"WX",     "METAR", "TAF",
                                                               "WEATHER", "SPECI", "SIGMET"};
    bool has[4] = {false, false, false, false};
    for (const auto& t : tokens) {
      has[0] |= atis.contains(t.text);
      has[1] |= clearance.contains(t.text);
      has[2] |= plan.contains(t.text);
      has[3] |= weather.contains(t.text);
    }
    if (!has[2]) {
      static const std::regex flight_plan(R"(\bFLIGHT PLAN\b)", kFlags);
      has[2] = std::regex_search(upper, flight_plan);
    }
    if (has[0]) cat = Category::kAtisRequest;
    else if (has[1]) cat = Category::kClearance;
    else if (has[2]) cat = Category::kFlightPlan;
    else if (has[3]) cat = Category::kWeatherReport;
  }
  if (!cat) return std::nullopt;

  Finding f;
  f.category = *cat;
  std::vector<const Token*> codes;
  std::set<std::string_view> seen;
  for (const auto& t : tokens) {
    if (t.text.size() == 4 && all_alpha(t.text) && lex.aerodromes.contains(std::string(t.text)) &&
        seen.insert(t.text).second) {
      codes.push_back(&t);
    }
  }
  if (codes.size() == 1) {
    f.entities.push_back(make_entity(EntityKind::kDestination, std::string(codes[0]->text),
                                     codes[0]->begin, codes[0]->end()));
  } else if (codes.size() >= 2) {
    f.entities.push_back(make_entity(EntityKind::kOrigin, std::string(codes.front()->text),
                                     codes.front()->begin, codes.front()->end()));
    f.entities.push_back(make_entity(EntityKind::kDestination, std::string(codes.back()->text),
                                     codes.back()->begin, codes.back()->end()));
  }
  f.confidence = f.entities.empty() ? Confidence::kMedium : Confidence::kHigh;
  return f;
}

std::optional<Finding> detect_card(std::string_view text, const Lexicon& lex) {
  static const std::regex pan_run(R"(\d{12,19})", kFlags);
  static const std::regex pan_grouped(R"(\d{4}([ -])\d{4}\1\d{4}\1\d{4}|\d{4}([ -])\d{6}\2\d{5})",
                                      kFlags);
  static const std::regex masked(
      R"([X*#]{4}[ -]?[X*#]{4}[ -]?[X*#]{4}[ -]?\d{4}|[X*#]{6,15}\d{4})", kFlags);
  static const std::regex cvv(R"(\bCV[VC]2? ?[:#]? ?(\d{3,4})\b)", kFlags);
  static const std::regex expiry(
      R"(\bEXP(?:IRY|IRES|DATE)? ?[:#]? ?((?:0[1-9]|1[0-2])/\d{2}(?:\d{2})?)\b)", kFlags);
  static const std::regex amount_pre(R"(\b(?:USD|EUR|GBP|CHF) ?(\d{1,7}(?:\.\d{2})?)\b)",
                                     kFlags);
  static const std::regex amount_dollar(R"(\$ ?(\d{1,7}(?:\.\d{2})?)\b)", kFlags);
  static const std::regex amount_post(R"(\b(\d{1,7}\.\d{2}) ?(?:USD|EUR|GBP|CHF)\b)", kFlags);
  static const std::regex auth(R"(\bAUTH(?:ORI[SZ]ATION)?(?: CODE)? ?[:#]? ?(\d{4,6})\b)",
                               kFlags);
  static const std::regex outcome(
      R"(\b(APPROVED|AUTHORI[SZ]ED|DECLINED|DENIED|REFUSED|REJECTED)\b)", kFlags);

  const std::string upper = to_upper(text);
  std::vector<Entity> pans, masks, cvvs, exps, amounts, auths, outcomes;

  auto add_pan = [&](const std::smatch& m) {
    const std::size_t b = m.position(0), e = b + m.length(0);
    if (!bounded(upper, b, e)) return;
    std::string digits;
    for (char c : m.str(0))
      if (c >= '0' && c <= '9') digits.push_back(c);
    if (digits.size() < 12 || digits.size() > 19 || !luhn_valid(digits)) return;
    pans.push_back(make_entity(EntityKind::kPan, digits, b, e));
  };
  for_each_match(pan_run, upper, add_pan);
  for_each_match(pan_grouped, upper, add_pan);
  for_each_match(masked, upper, [&](const std::smatch& m) {
    const std::size_t b = m.position(0), e = b + m.length(0);
    if (!bounded(upper, b, e) || (b > 0 && (upper[b - 1] == '*' || upper[b - 1] == '#'))) return;
    masks.push_back(slice_entity(EntityKind::kMaskedPan, text, b, e));
  });
  auto capture = [&](const std::regex& re, EntityKind kind, std::vector<Entity>& into) {
    for_each_match(re, upper, [&](const std::smatch& m) {
      into.push_back(make_entity(kind, m.str(1), m.position(0), m.position(0) + m.length(0)));
    });
  };
  capture(cvv, EntityKind::kCvv, cvvs);
  capture(expiry, EntityKind::kExpiry, exps);
  capture(amount_pre, EntityKind::kAmount, amounts);
  capture(amount_dollar, EntityKind::kAmount, amounts);
  capture(amount_post, EntityKind::kAmount, amounts);
  capture(auth, EntityKind::kAuthCode, auths);
  capture(outcome, EntityKind::kAuthOutcome, outcomes);
  std::sort(amounts.begin(), amounts.end(),
            [](const Entity& a, const Entity& b) { return a.span.begin < b.span.begin; });

  Finding f;
  auto near = [](const Entity& anchor, const std::vector<Entity>& pool,
                 std::vector<Entity>& into) {
    bool any = false;
    for (const auto& e : pool) {
      if (gap(anchor.span, e.span) <= kCardProximity) {
        into.push_back(e);
        any = true;
      }
    }
    return any;
  };

  if (!pans.empty()) {
    const auto names = find_person_names(text, lex);
    std::size_t best_score = 0;
    std::vector<Entity> best;
    for (const auto& pan : pans) {
      std::vector<Entity> ents{pan};
      const std::size_t score = near(pan, cvvs, ents) + near(pan, exps, ents) +
                                near(pan, amounts, ents) + near(pan, names, ents);
      if (best.empty() || score > best_score) {
        best_score = score;
        best = std::move(ents);
      }
    }
    f.entities = std::move(best);
    if (best_score >= 2) {
      f.category = Category::kCardFull;
      f.confidence = Confidence::kHigh;
    } else {
      f.category = Category::kCardPartial;
      f.confidence = Confidence::kMedium;
    }
  } else if (!masks.empty()) {
    f.category = Category::kCardPartial;
    f.confidence = Confidence::kMedium;
    f.entities = masks;
    for (auto* pool : {&exps, &amounts, &auths, &outcomes})
      f.entities.insert(f.entities.end(), pool->begin(), pool->end());
  } else if (!auths.empty() && (!exps.empty() || !amounts.empty())) {
    f.category = Category::kCardPartial;
    f.confidence = Confidence::kMedium;
    f.entities = auths;
    for (auto* pool : {&exps, &amounts, &outcomes})
      f.entities.insert(f.entities.end(), pool->begin(), pool->end());
  } else if (!auths.empty() && !outcomes.empty()) {
    f.category = Category::kCardContext;
    f.confidence = Confidence::kLow;
    f.entities = auths;
    f.entities.insert(f.entities.end(), outcomes.begin(), outcomes.end());
  } else {
    return std::nullopt;
  }
  std::stable_sort(f.entities.begin(), f.entities.end(),
                   [](const Entity& a, const Entity& b) { return a.span.begin < b.span.begin; });
  return f;
}

std::optional<Finding> detect_medical(std::string_view text, const Lexicon& lex) {
  const std::string upper = to_upper(text);
  auto conditions = find_phrases(text, upper, lex.medical_conditions, EntityKind::kCondition);
  auto logistics =
      find_phrases(text, upper, lex.medical_logistics, EntityKind::kMedicalLogistics);
  if (conditions.empty() && logistics.empty()) return std::nullopt;
  Finding f;
  if (!conditions.empty()) {
    auto names = find_person_names(text, lex);
    if (!names.empty()) {
      f.category = Category::kMedicalFull;
      f.confidence = Confidence::kHigh;
      f.entities = std::move(names);
    }
  }
  if (f.entities.empty()) {
    f.category = Category::kMedicalContext;
    f.confidence = Confidence::kMedium;
  }
  f.entities.insert(f.entities.end(), conditions.begin(), conditions.end());
  f.entities.insert(f.entities.end(), logistics.begin(), logistics.end());
  std::stable_sort(f.entities.begin(), f.entities.end(),
                   [](const Entity& a, const Entity& b) { return a.span.begin < b.span.begin; });
  return f;
}

std::optional<Finding> detect_passenger_manifest(std::string_view text, const Lexicon& lex) {
  static const std::regex seat(R"(\b\d{1,2}[A-K]\b)", kFlags);
  static const std::regex flight(R"(\b(?:[A-Z]{2}|[A-Z][0-9]|[0-9][A-Z])[0-9]{1,4}\b)", kFlags);
  static const std::regex solicit(
      R"(\b(?:PLS|PLEASE|PLZ|REQ|REQUEST|SEND|ADV|ADVISE)\b[^;\n\r]{0,30}\b(?:PAX|PASSENGERS?)\b[^;\n\r]{0,20}\b(?:NAMES|NAME LIST|LIST|MANIFEST|CONNECTIONS|CONX|CNX)\b)",
      kFlags);

  const std::string upper = to_upper(text);
  const auto names = find_person_names(text, lex);
  Finding f;
  f.category = Category::kPassengerManifest;
  int tuples = 0;

  std::size_t seg_begin = 0;
  std::size_t name_idx = 0;
  while (seg_begin <= upper.size()) {
    std::size_t seg_end = upper.find_first_of(";\n\r", seg_begin);
    if (seg_end == std::string::npos) seg_end = upper.size();
    std::vector<const Entity*> in_seg;
    while (name_idx < names.size() && names[name_idx].span.begin < seg_end) {
      if (names[name_idx].span.begin >= seg_begin && names[name_idx].span.end <= seg_end) {
        in_seg.push_back(&names[name_idx]);
      }
      ++name_idx;
    }
    for (std::size_t k = 0; k < in_seg.size(); ++k) {
      const std::size_t rb = in_seg[k]->span.end;
      const std::size_t re = k + 1 < in_seg.size() ? in_seg[k + 1]->span.begin : seg_end;
      const std::string region = upper.substr(rb, re - rb);
      std::vector<Entity> attrs;
      auto collect = [&](const std::regex& rx, EntityKind kind) {
        for_each_match(rx, region, [&](const std::smatch& m) {
          const std::size_t b = rb + m.position(0);
          attrs.push_back(slice_entity(kind, text, b, b + m.length(0)));
        });
      };
      collect(seat, EntityKind::kSeat);
      collect(flight, EntityKind::kFlight);
      for (const auto& t : alnum_tokens(region)) {
        const bool iata = t.text.size() == 3 && lex.iata_codes.contains(std::string(t.text));
        const bool icao = t.text.size() == 4 && lex.aerodromes.contains(std::string(t.text));
        if (iata || icao) {
          attrs.push_back(slice_entity(EntityKind::kConnection, text, rb + t.begin,
                                       rb + t.end()));
        }
      }
      if (attrs.empty()) continue;
      Entity name = *in_seg[k];
      name.group = tuples;
      f.entities.push_back(std::move(name));
      std::sort(attrs.begin(), attrs.end(),
                [](const Entity& a, const Entity& b) { return a.span.begin < b.span.begin; });
      for (auto& a : attrs) {
        a.group = tuples;
        f.entities.push_back(std::move(a));
      }
      ++tuples;
    }
    if (seg_end >= upper.size()) break;
    seg_begin = seg_end + 1;
  }

  std::smatch m;
  const bool solicits = std::regex_search(upper, m, solicit);
  if (solicits) {
    const std::size_t b = m.position(0);
    f.entities.insert(f.entities.begin(),
                      slice_entity(EntityKind::kSolicitation, text, b, b + m.length(0)));
  }
  if (tuples == 0 && !solicits) return std::nullopt;
  f.confidence = tuples > 0 ? Confidence::kHigh : Confidence::kMedium;
  return f;
}

std::optional<Finding> detect_email(std::string_view text) {
  static const std::regex email(R"([A-Z0-9._%+-]+@[A-Z0-9-]+(?:\.[A-Z0-9-]+)*\.[A-Z]{2,24})",
                                kFlags);
  const std::string upper = to_upper(text);
  Finding f;
  f.category = Category::kEmailAddress;
  for_each_match(email, upper, [&](const std::smatch& m) {
    const std::size_t b = m.position(0);
    f.entities.push_back(slice_entity(EntityKind::kEmail, text, b, b + m.length(0)));
  });
  if (f.entities.empty()) return std::nullopt;
  return f;
}

std::vector<Finding> detect_content(std::string_view text,
                                    frame::LabelCategory label_category,
                                    const Lexicon& lex, std::string_view record_id) {
  std::vector<Finding> out;
  auto push = [&](std::optional<Finding> f) {
    if (!f) return;
    f->record_id = std::string(record_id);
    out.push_back(std::move(*f));
  };
  push(detect_position(text));
  push(detect_intention(text, label_category, lex));
  push(detect_card(text, lex));
  push(detect_medical(text, lex));
  push(detect_passenger_manifest(text, lex));
  push(detect_email(text));
  std::stable_sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) {
    return a.category < b.category;
  });
  return out;
}

}  // namespace acars_audit::content
