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

#include "synth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "acars_audit/csv.hpp"
#include "acars_audit/frame.hpp"
#include "acars_audit/text.hpp"

namespace acars_audit::synth {
namespace {

using content::Category;
using ingest::AcarsRecord;
using ingest::Direction;
using ingest::Link;
using registry::AircraftRecord;
using registry::StakeholderClass;

template <class T>
const T& choose(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[pick(rng, v.size())];
}

std::string letters(std::size_t i, int width) {
  std::string out(static_cast<std::size_t>(width), 'A');
  for (int k = width - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = static_cast<char>('A' + i % 26);
    i /= 26;
  }
  return out;
}

const std::vector<std::string> kAerodromes = {"EGLL", "LSZH", "EDDF", "LFPG", "EHAM", "LEMD",
                                              "LIRF", "LOWW", "OMDB", "KJFK", "KTEB", "LSGG",
                                              "EDDM", "EGGW", "LFMN", "VHHH", "OTHH", "LMML"};
const std::vector<std::string> kIata = {"FRA", "LHR", "CDG", "AMS", "ZRH", "JFK",
                                        "DXB", "MUC", "GVA", "VIE", "MAD", "BCN"};
const std::vector<std::string> kAirlineCodes = {"LH", "BA", "LX", "AF", "KL", "EK", "OS", "IB"};
const std::vector<std::string> kGiven = {"JOHN", "MARIA", "PETER", "ANNA",  "DAVID", "LAURA",
                                         "MARK", "SARAH", "PAUL",  "ELENA", "JAMES", "CLAIRE",
                                         "HANS", "SOFIA", "LUCA",  "EMMA"};
const std::vector<std::string> kSurnames = {"SMITH",  "DOE",    "MUELLER", "GARCIA",
                                            "ROSSI",  "JANSEN", "NOVAK",   "MURPHY",
                                            "TANAKA", "SILVA",  "WEBER",   "DUBOIS"};
const std::string kInitials = "BCDEFGHJKLMNPRSTW";
const std::vector<std::string> kConditions = {"CHEST PAIN", "SEIZURE",     "DIABETIC",
                                              "ASTHMA",     "UNCONSCIOUS", "HIGH FEVER",
                                              "BROKEN ARM", "FOOD POISONING"};
const std::vector<std::string> kSids = {"DEGES2W", "VEBIT1K", "BREGO3T", "CPT5J", "LAM4Q"};
const std::vector<std::string> kWaypoints = {"TRA",   "BERSU", "KOLUL", "DIKEN", "LAMSO",
                                             "REDFA", "ABUDO", "GIPOL", "RILAX", "DOMUX"};
const std::vector<std::string> kWords = {"Alder",  "Birch",  "Cobalt", "Delta Crest", "Ember",
                                         "Falcon", "Granite", "Harbor", "Ivory",      "Juniper",
                                         "Kestrel", "Lumen",  "Meridian", "Nimbus",   "Orchid",
                                         "Pioneer", "Quartz", "Raven",  "Summit",     "Tundra"};

std::string seat(std::mt19937_64& rng) {
  return fmt::format("{}{}", 1 + pick(rng, 40), "ABCDEFHJK"[pick(rng, 9)]);
}

std::string flight_no(std::mt19937_64& rng) {
  return fmt::format("{}{}", choose(rng, kAirlineCodes), 10 + pick(rng, 9000));
}

std::pair<std::string, std::string> two_aerodromes(std::mt19937_64& rng) {
  const auto& a = choose(rng, kAerodromes);
  std::string b;
  do {
    b = choose(rng, kAerodromes);
  } while (b == a);
  return {a, b};
}

struct Msg {
  std::string label;
  std::string text;
  bool downlink = true;
  std::set<Category> expect;
};

using Gen = std::function<Msg(std::mt19937_64&)>;

// ---- templates --------------------------------------------------------

std::string position_text(std::mt19937_64& rng) {
  const double lat = static_cast<double>(pick(rng, 8900)) / 100.0;
  const double lon = static_cast<double>(pick(rng, 17900)) / 100.0;
  const char ns = pick(rng, 4) == 0 ? 'S' : 'N';
  const char ew = pick(rng, 3) == 0 ? 'W' : 'E';
  if (pick(rng, 2) == 0) {
    return fmt::format("POS {}{:05.2f} {}{:06.2f},FL{},ETA {:02}{:02}", ns, lat, ew, lon,
                       300 + pick(rng, 120), pick(rng, 24), pick(rng, 60));
  }
  const auto lat_d = static_cast<int>(lat);
  const auto lon_d = static_cast<int>(lon);
  return fmt::format("POS {} {:02} {:04.1f} {} {:03} {:04.1f} FL{}", ns, lat_d,
                     static_cast<double>(pick(rng, 600)) / 10.0, ew, lon_d,
                     static_cast<double>(pick(rng, 600)) / 10.0, 300 + pick(rng, 120));
}

Msg position(std::mt19937_64& rng) {
  static const std::vector<std::string> labels = {"5Q", "16", "80", "15"};
  return {choose(rng, labels), position_text(rng), true, {Category::kPositionReport}};
}

Msg atis_request(std::mt19937_64& rng) {
  const auto& apt = choose(rng, kAerodromes);
  if (pick(rng, 2) == 0) {
    return {"B9", fmt::format("/{} ARR ATIS REQ", apt), true, {Category::kAtisRequest}};
  }
  return {"AA", fmt::format("ATIS REQ {} ARR", apt), true, {Category::kAtisRequest}};
}

Msg atis_report(std::mt19937_64& rng) {
  const auto& apt = choose(rng, kAerodromes);
  return {"A9",
          fmt::format("{} ARR INFO {} {:02}20Z RWY 27R IN USE QNH 10{:02}", apt,
                      "BCDEFGHJKLM"[pick(rng, 11)], pick(rng, 24), pick(rng, 30)),
          false,
          {Category::kAtisRequest}};
}

Msg clearance_request(std::mt19937_64& rng) {
  const auto [a, b] = two_aerodromes(rng);
  return {"B3", fmt::format("REQ PDC {} {} {} STAND {}", flight_no(rng), a, b, 1 + pick(rng, 90)),
          true, {Category::kClearance}};
}

Msg clearance_delivery(std::mt19937_64& rng) {
  const auto& dest = choose(rng, kAerodromes);
  return {"A3",
          fmt::format("CLRD TO {} OFF RWY 28 VIA {} SQUAWK {}{}{}{}", dest, choose(rng, kSids),
                      pick(rng, 8), pick(rng, 8), pick(rng, 8), pick(rng, 8)),
          false,
          {Category::kClearance}};
}

Msg flight_plan(std::mt19937_64& rng) {
  const auto [a, b] = two_aerodromes(rng);
  std::string route = choose(rng, kWaypoints);
  for (std::size_t i = 0; i < 3; ++i) route += "." + choose(rng, kWaypoints);
  return {"H2", fmt::format("FPN/RI:DA:{}:AA:{}:F:{}", a, b, route), false,
          {Category::kFlightPlan}};
}

Msg weather(std::mt19937_64& rng) {
  if (pick(rng, 2) == 0) {
    const auto [a, b] = two_aerodromes(rng);
    return {"5U", fmt::format("WX REQ METAR {} {}", a, b), true, {Category::kWeatherReport}};
  }
  const auto& apt = choose(rng, kAerodromes);
  return {"A2",
          fmt::format("METAR {} {:02}1350Z {:03}{:02}KT 9999 FEW030 18/09 Q10{:02} NOSIG", apt,
                      1 + pick(rng, 28), 10 * pick(rng, 36), 3 + pick(rng, 20), pick(rng, 30)),
          false,
          {Category::kWeatherReport}};
}

Msg position_and_weather(std::mt19937_64& rng) {
  return {"5Z", fmt::format("{};WX REQ TAF {}", position_text(rng), choose(rng, kAerodromes)),
          true, {Category::kPositionReport, Category::kWeatherReport}};
}

std::string expiry(std::mt19937_64& rng) {
  return fmt::format("{:02}/{:02}", 1 + pick(rng, 12), 18 + pick(rng, 10));
}

std::string cvv(std::mt19937_64& rng) { return fmt::format("{:03}", pick(rng, 1000)); }

Msg card_full(std::mt19937_64& rng) {
  const std::string pan = luhn_number(rng, pick(rng, 2) == 0 ? "4" : "51", 16);
  switch (pick(rng, 3)) {
    case 0:
      return {"5Z",
              fmt::format("PAX CARD PAYMENT {} EXP {} CVV {} USD {}.00", pan, expiry(rng),
                          cvv(rng), 500 + pick(rng, 900)),
              true,
              {Category::kCardFull}};
    case 1:
      return {"5Z",
              fmt::format("INFLIGHT SALE CARD {} {} {} {} CVV {} TOTAL EUR {}.50", pan.substr(0, 4),
                          pan.substr(4, 4), pan.substr(8, 4), pan.substr(12, 4), cvv(rng),
                          20 + pick(rng, 400)),
              true,
              {Category::kCardFull}};
    default:
      return {"5Z",
              fmt::format("CARDHOLDER {}/{} {} EXP {}", choose(rng, kSurnames),
                          kInitials[pick(rng, kInitials.size())], pan, expiry(rng)),
              true,
              {Category::kCardFull}};
  }
}

Msg card_partial(std::mt19937_64& rng) {
  switch (pick(rng, 3)) {
    case 0:
      return {"5Z",
              fmt::format("CARD XXXXXXXXXXXX{:04} EXP {} DECLINED", pick(rng, 10000),
                          expiry(rng)),
              true,
              {Category::kCardPartial}};
    case 1:
      return {"5Z",
              fmt::format("AUTH {:05} EXP {} USD {}.00", pick(rng, 100000), expiry(rng),
                          10 + pick(rng, 300)),
              true,
              {Category::kCardPartial}};
    default:
      return {"5Z",
              fmt::format("DUTY FREE CARD {} GBP {}.00", luhn_number(rng, "4", 16),
                          10 + pick(rng, 300)),
              true,
              {Category::kCardPartial}};
  }
}

Msg card_context(std::mt19937_64& rng) {
  static const std::vector<std::string> outcomes = {"APPROVED", "DECLINED", "DENIED"};
  if (pick(rng, 2) == 0) {
    return {"C1", fmt::format("AUTH {:05} {}", pick(rng, 100000), choose(rng, outcomes)), false,
            {Category::kCardContext}};
  }
  return {"C1", fmt::format("AUTH CODE {:06} {}", pick(rng, 1000000), choose(rng, outcomes)),
          false, {Category::kCardContext}};
}

Msg medical_full(std::mt19937_64& rng) {
  if (pick(rng, 3) == 0) {
    return {"5Z",
            fmt::format("MEDICAL {}/{} SEAT {} {}", choose(rng, kSurnames),
                        kInitials[pick(rng, kInitials.size())], seat(rng), choose(rng, kConditions)),
            true,
            {Category::kMedicalFull, Category::kPassengerManifest}};
  }
  return {"5Z",
          fmt::format("PAX {} {} {} REQ MEDICS ON ARRIVAL", choose(rng, kGiven),
                      choose(rng, kSurnames), choose(rng, kConditions)),
          true,
          {Category::kMedicalFull}};
}

Msg medical_context(std::mt19937_64& rng) {
  switch (pick(rng, 4)) {
    case 0:
      return {"5Z", "MEDICS MEETING ACFT ON STAND", true, {Category::kMedicalContext}};
    case 1:
      return {"5Z", fmt::format("WCHR NEEDED AT GATE FOR {} PAX", 1 + pick(rng, 3)), true,
              {Category::kMedicalContext}};
    case 2:
      return {"RA", "DETAILS ON UNWELL PAX PLS ADV CONDITION", false,
              {Category::kMedicalContext}};
    default:
      return {"5Z",
              fmt::format("PAX WITH {} SEAT {} AMBULANCE REQUIRED", choose(rng, kConditions),
                          seat(rng)),
              true,
              {Category::kMedicalContext}};
  }
}

std::string tuple_text(std::mt19937_64& rng, const std::string& surname) {
  return fmt::format("{}/{} {} {} {}", surname, kInitials[pick(rng, kInitials.size())], seat(rng),
                     flight_no(rng), choose(rng, kIata));
}

Msg manifest(std::mt19937_64& rng) {
  std::string text = "CONX INFO:";
  const std::size_t n = 1 + pick(rng, 4);
  for (std::size_t i = 0; i < n; ++i) {
    text += (i == 0 ? " " : ";") + tuple_text(rng, kSurnames[(i * 5 + pick(rng, 3)) % kSurnames.size()]);
  }
  return {"5Z", text, true, {Category::kPassengerManifest}};
}

Msg manifest_solicit(std::mt19937_64& rng) {
  if (pick(rng, 2) == 0) {
    return {"RA", fmt::format("PLS ADV PAX NAMES AND CONX FOR {}", flight_no(rng)), false,
            {Category::kPassengerManifest}};
  }
  return {"RA", "REQ PAX CONNECTIONS LIST BEFORE LANDING", false, {Category::kPassengerManifest}};
}

Msg email(std::mt19937_64& rng) {
  static const std::vector<std::string> domains = {"EXAMPLE.COM", "OPS.EXAMPLE.NET",
                                                   "FLEET.EXAMPLE.AERO"};
  switch (pick(rng, 3)) {
    case 0:
      return {"C1", fmt::format("EMAIL FROM: DISPATCH AT OPS@{}", choose(rng, domains)), false,
              {Category::kEmailAddress}};
    case 1:
      return {"C1",
              fmt::format("FWD TO CREWCONTROL@{} CC DUTY.MGR@{}", choose(rng, domains),
                          choose(rng, domains)),
              false,
              {Category::kEmailAddress}};
    default:
      return {"5Z", fmt::format("REPLY TO HANDLING{}@{}", pick(rng, 100), choose(rng, domains)),
              true, {Category::kEmailAddress}};
  }
}

std::string bad_luhn(std::mt19937_64& rng) {
  std::string s = luhn_number(rng, "4", 16);
  s.back() = static_cast<char>('0' + (s.back() - '0' + 1 + pick(rng, 9)) % 10);
  return s;
}

Msg existence(std::mt19937_64& rng) {
  switch (pick(rng, 9)) {
    case 0: return {"SQ", fmt::format("02XS{:04}", pick(rng, 10000)), false, {Category::kExistenceOnly}};
    case 1: return {"Q0", "", true, {Category::kExistenceOnly}};
    case 2:
      return {"H1", "ENG 2 OIL PRESS NORMAL AFTER START NO FURTHER ACTION REQUIRED", true,
              {Category::kExistenceOnly}};
    case 3: return {"5Z", "CATERING SHORT 5 MEALS", true, {Category::kExistenceOnly}};
    case 4:
      return {"5Z", fmt::format("TOTAL PAX {}", 80 + pick(rng, 200)), true,
              {Category::kExistenceOnly}};
    case 5: return {"AA", "HELLO CREW", false, {Category::kExistenceOnly}};
    case 6:
      return {"5Z", fmt::format("BAG TAG {}", bad_luhn(rng)), true, {Category::kExistenceOnly}};
    case 7:
      return {"5Z", fmt::format("CALL {} AT GATE", choose(rng, kSurnames)), true,
              {Category::kExistenceOnly}};
    default:
      return {"RB", fmt::format("LOADSHEET FINAL ZFW {} TOW {}", 50000 + pick(rng, 20000),
                                60000 + pick(rng, 20000)),
              false, {Category::kExistenceOnly}};
  }
}

// Unique synthetic surnames for the large manifest.
std::vector<std::string> big_manifest_surnames() {
  static const char* first[] = {"KAR", "MOL", "BEN", "TOR", "VAL", "DUN", "RIS", "FEL",
                                "GOR", "HAL", "LIN", "MAR", "NOR", "PEL", "SAN"};
  static const char* second[] = {"DEK",  "VIN",  "SOM",  "LAT",  "ROW", "BERG", "STAD",
                                 "HOLM", "FORD", "WICK", "TON",  "LEY", "RIDGE", "BURN"};
  std::vector<std::string> out;
  for (const char* a : first)
    for (const char* b : second) out.push_back(std::string(a) + b);
  return out;
}

Msg big_manifest(std::mt19937_64& rng) {
  std::string text = "PAX CONX LIST:";
  const auto names = big_manifest_surnames();
  for (std::size_t i = 0; i < names.size(); ++i) {
    text += (i == 0 ? " " : ";") + tuple_text(rng, names[i]);
  }
  return {"5Z", text, true, {Category::kPassengerManifest}};
}

const cipher::CribTemplate& crib() {
  static const cipher::CribTemplate tpl = cipher::CribTemplate::load_default();
  return tpl;
}

// ---- record assembly --------------------------------------------------

constexpr double kVhfChannels[] = {131.525, 131.725, 131.825};

AcarsRecord to_record(std::mt19937_64& rng, std::string_view registration, const Msg& m,
                      double ts, int seq, std::string_view flight) {
  AcarsRecord r;
  r.timestamp = ts;
  r.direction = m.downlink ? Direction::kDownlink : Direction::kUplink;
  const auto roll = pick(rng, 10);
  if (m.downlink) {
    if (roll < 4) {
      r.link = Link::kVhfPoa;
      r.frequency_mhz = kVhfChannels[pick(rng, 3)];
    } else if (roll < 7) {
      r.link = Link::kVdlm2;
      r.frequency_mhz = 136.975;
    } else {
      r.link = Link::kSatcomDownlink;
      r.frequency_mhz = 1646.0;
    }
  } else if (roll < 7) {
    r.link = Link::kSatcomUplink;
    r.frequency_mhz = 1545.075;
  } else {
    r.link = Link::kVhfPoa;
    r.frequency_mhz = kVhfChannels[pick(rng, 3)];
  }
  r.raw_frame = make_frame(registration, m.label, m.text, m.downlink, seq, flight);
  return r;
}

std::string flight_for(std::string_view registration) {
  std::string id = "X";
  for (char c : registration)
    if (std::isalnum(static_cast<unsigned char>(c)) && id.size() < 6) id.push_back(c);
  return id;
}

}  // namespace

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("pick from empty range");
  return static_cast<std::size_t>(rng() % n);
}

std::string luhn_number(std::mt19937_64& rng, std::string_view prefix, std::size_t length) {
  std::string s(prefix);
  while (s.size() + 1 < length) s.push_back(static_cast<char>('0' + pick(rng, 10)));
  // Choose the check digit that makes the doubled sum divisible by ten.
  for (char check = '0'; check <= '9'; ++check) {
    std::string candidate = s + check;
    int sum = 0;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      int d = candidate[candidate.size() - 1 - i] - '0';
      if (i % 2 == 1) d = d * 2 > 9 ? d * 2 - 9 : d * 2;
      sum += d;
    }
    if (sum % 10 == 0) return candidate;
  }
  throw std::logic_error("no check digit");
}

std::string make_frame(std::string_view registration, std::string_view label,
                       std::string_view text, bool downlink, int seq, std::string_view flight) {
  frame::AcarsMessage m;
  m.mode = '2';
  m.registration = std::string(registration);
  m.tech_ack = downlink ? '!' : frame::kNak;
  m.label = std::string(label);
  m.block_id = downlink ? std::optional<char>(static_cast<char>('1' + seq % 9))
                        : std::optional<char>(static_cast<char>('A' + seq % 20));
  if (downlink) {
    m.msg_no = fmt::format("M{:02}{}", seq % 100, static_cast<char>('A' + (seq / 100) % 26));
    m.flight_id = std::string(flight.substr(0, 6));
  }
  m.text = std::string(text);
  return frame::serialize_frame(m);
}

frame::AcarsMessage random_message(std::mt19937_64& rng) {
  static constexpr std::string_view kUpper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  static constexpr std::string_view kDigits = "0123456789";
  static constexpr std::string_view kAlnum =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  static constexpr std::string_view kLabel =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_";
  static constexpr std::string_view kBlock =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  auto from = [&](std::string_view set) { return set[pick(rng, set.size())]; };

  frame::AcarsMessage m;
  m.mode = static_cast<char>(0x21 + pick(rng, 94));
  const std::size_t reg_len = 1 + pick(rng, 7);
  for (std::size_t i = 0; i < reg_len; ++i) {
    m.registration.push_back(pick(rng, 10) == 0 ? '-' : from(kAlnum));
  }
  m.tech_ack = pick(rng, 4) == 0 ? frame::kNak : static_cast<char>(0x21 + pick(rng, 94));
  m.label = {from(kLabel), from(kLabel)};
  if (pick(rng, 4) != 0) m.block_id = from(kBlock);
  if (pick(rng, 3) != 0) {
    m.msg_no = std::string{from(kUpper), from(kDigits), from(kDigits), from(kAlnum)};
    if (pick(rng, 4) != 0) {
      std::string f;
      const std::size_t n = 1 + pick(rng, 6);
      for (std::size_t i = 0; i < n; ++i) f.push_back(from(kAlnum));
      m.flight_id = f;
    }
  }
  const std::size_t text_len = pick(rng, 5) == 0 ? 0 : pick(rng, 220);
  for (std::size_t i = 0; i < text_len; ++i) {
    // mostly printable, with the occasional control byte (ETX, DEL, STX ...)
    m.text.push_back(pick(rng, 20) == 0 ? static_cast<char>(pick(rng, 32))
                                        : static_cast<char>(0x20 + pick(rng, 95)));
  }
  if (!m.msg_no && !m.text.empty() && m.text.front() == frame::kStx) m.text.front() = ' ';
  return m;
}

std::string random_bytes(std::mt19937_64& rng, std::size_t max_length) {
  std::string out;
  const std::size_t n = pick(rng, max_length + 1);
  if (pick(rng, 2) == 0 && n >= 13) {
    // start from a real header so the parser gets past the first checks
    out = frame::serialize_frame(random_message(rng)).substr(0, 13);
  }
  while (out.size() < n) out.push_back(static_cast<char>(pick(rng, 256)));
  // flip a few bytes of the header, too
  for (std::size_t k = pick(rng, 3); k > 0 && !out.empty(); --k) {
    out[pick(rng, out.size())] = static_cast<char>(pick(rng, 256));
  }
  return out;
}

std::vector<audit::MessageOutcome> random_outcomes(std::mt19937_64& rng, std::size_t count) {
  using content::EntityKind;
  static constexpr EntityKind kKinds[] = {EntityKind::kPosition,   EntityKind::kOrigin,
                                          EntityKind::kDestination, EntityKind::kPan,
                                          EntityKind::kPersonName, EntityKind::kSeat,
                                          EntityKind::kCondition,  EntityKind::kEmail};
  static constexpr registry::StakeholderClass kClasses[] = {
      registry::StakeholderClass::kBusiness, registry::StakeholderClass::kCommercial,
      registry::StakeholderClass::kMilitary, registry::StakeholderClass::kState,
      registry::StakeholderClass::kUnknown};
  static std::atomic<std::uint64_t> serial{0};
  const auto& cats = content::all_categories();

  auto finding = [&](auto& self, const std::string& record_id, int depth) -> content::Finding {
    content::Finding f;
    f.record_id = record_id;
    f.category = cats[pick(rng, cats.size())];
    f.confidence = static_cast<content::Confidence>(pick(rng, 3));
    for (std::size_t k = pick(rng, 3); k > 0; --k) {
      content::Entity e;
      e.kind = kKinds[pick(rng, std::size(kKinds))];
      e.value = fmt::format("V{}", pick(rng, 50));
      e.span = {0, e.value.size()};
      f.entities.push_back(e);
    }
    if (depth == 0 && f.category == content::Category::kEncryptedWeak && pick(rng, 2) == 0) {
      f.derived.push_back(self(self, record_id, 1));
    }
    return f;
  };

  std::vector<audit::MessageOutcome> out;
  for (std::size_t i = 0; i < count; ++i) {
    audit::MessageOutcome o;
    o.ctx.record_id = fmt::format("rec{}", serial++);
    o.ctx.timestamp = 1.5e9 + static_cast<double>(i);
    o.ctx.link = ingest::kAllLinks[pick(rng, ingest::kAllLinks.size())];
    o.ctx.direction = static_cast<ingest::Direction>(pick(rng, 3));
    if (pick(rng, 10) == 0) {
      o.parse_error = "too_short";
    } else {
      const auto n = pick(rng, 30);
      o.ctx.registration = fmt::format("N{}", n);
      o.ctx.stakeholder = kClasses[n % std::size(kClasses)];
      if (n % 3 == 0) o.ctx.block = registry::BlockLevel::kSubscriber;
      for (std::size_t k = 1 + pick(rng, 2); k > 0; --k) o.findings.push_back(finding(finding, o.ctx.record_id, 0));
    }
    out.push_back(std::move(o));
  }
  return out;
}

pipeline::Context make_context(std::span<const registry::AircraftRecord> aircraft,
                               std::span<const registry::BlockEntry> blocks,
                               const std::vector<std::string>& ofc_list) {
  const std::filesystem::path data(ACARS_AUDIT_DATA_DIR);
  pipeline::Context ctx;
  ctx.labels = frame::LabelRegistry::load(data / "labels.csv");
  ctx.lexicon = content::Lexicon::load(data / "keywords", data / "aerodromes.txt");
  ctx.rules = registry::RuleTable::load(data / "rules.csv");
  ctx.crib = cipher::CribTemplate::load(data / "crib_template.txt");
  for (const auto& a : aircraft) ctx.registry.upsert(a);
  for (const auto& b : blocks) ctx.blocklist.add(b);
  if (!ofc_list.empty()) {
    ctx.ofc_list.clear();
    for (const auto& t : ofc_list) ctx.ofc_list.insert(to_upper(t));
  }
  ctx.prepare();
  return ctx;
}

const std::vector<std::pair<std::string, std::size_t>>& demo_offshore_counts() {
  static const std::vector<std::pair<std::string, std::size_t>> counts = {
      {"Isle of Man", 118},   {"Malta", 61},    {"Bermuda", 56},
      {"Cayman Islands", 49}, {"Aruba", 22},    {"United Arab Emirates", 17},
      {"Hong Kong", 6},       {"Jersey", 5},    {"Luxembourg", 5},
      {"Guernsey", 4},        {"British Virgin Islands", 3},
      {"Panama", 2},          {"Gibraltar", 1}};
  return counts;
}

DemoFleet demo_fleet(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DemoFleet fleet;
  for (const auto& [territory, n] : demo_offshore_counts()) fleet.ofc_list.push_back(territory);
  std::size_t icao = 0x3c4000;
  auto add = [&](std::string reg, std::string type, std::string op, std::string owner,
                 std::string country, StakeholderClass cls) {
    AircraftRecord r;
    r.icao24 = fmt::format("{:06x}", icao++);
    r.registration = std::move(reg);
    r.ac_type = std::move(type);
    r.operator_name = std::move(op);
    r.owner = std::move(owner);
    r.country = std::move(country);
    r.source = cls == StakeholderClass::kUnknown ? "club-list" : "demo";
    fleet.aircraft.push_back(std::move(r));
  };
  static const std::vector<std::string> biz_types = {"GLF5", "GLF6", "GLEX", "CL60", "FA7X",
                                                     "F2TH", "C56X", "LJ45", "E55P", "PC24"};
  static const std::vector<std::string> shell_suffix = {
      "Holdings Ltd", "Aviation Limited", "Capital Ltd", "Investments Ltd", "Group Ltd",
      "Ventures Inc"};

  // Business: shells in OFC territories first.
  std::map<std::string, std::pair<std::string, int>> prefixes = {
      {"Isle of Man", {"M-", 4}},        {"Malta", {"9H-", 3}},
      {"Bermuda", {"VP-B", 2}},          {"Cayman Islands", {"VP-C", 2}},
      {"Aruba", {"P4-", 3}},             {"United Arab Emirates", {"A6-R", 2}},
      {"Hong Kong", {"B-K", 2}},         {"Jersey", {"ZJ-", 3}},
      {"Luxembourg", {"LX-", 3}},        {"Guernsey", {"2-", 4}},
      {"British Virgin Islands", {"VP-L", 2}}, {"Panama", {"HP-", 3}},
      {"Gibraltar", {"VP-G", 2}}};
  std::map<std::string, std::size_t> next;
  auto reg_in = [&](const std::string& territory) {
    const auto& [prefix, width] = prefixes.at(territory);
    return prefix + letters(next[territory]++, width);
  };
  std::size_t business = 0;
  for (const auto& [territory, n] : demo_offshore_counts()) {
    for (std::size_t i = 0; i < n; ++i, ++business) {
      add(reg_in(territory), choose(rng, biz_types), "",
          choose(rng, kWords) + " " + choose(rng, shell_suffix), territory,
          StakeholderClass::kBusiness);
    }
  }
  // Privately owned in an OFC territory: not a shell.
  for (std::size_t i = 0; i < 12; ++i, ++business) {
    add(reg_in(i % 2 ? "Malta" : "Isle of Man"), choose(rng, biz_types), "",
        choose(rng, kGiven) + " " + choose(rng, kSurnames), i % 2 ? "Malta" : "Isle of Man",
        StakeholderClass::kBusiness);
  }
  for (std::size_t i = 0; i < 420; ++i, ++business) {
    const std::string reg = fmt::format("N{}", 10000 + i);
    add(reg, choose(rng, biz_types), "", reg + " LLC", "United States",
        StakeholderClass::kBusiness);
  }
  static const std::vector<std::string> trustees = {"Wells Fargo Trust Co NA Trustee",
                                                    "Bank of Utah Trustee",
                                                    "Wilmington Trust Company"};
  for (std::size_t i = 0; i < 230; ++i, ++business) {
    add(fmt::format("N{}", 20000 + i), choose(rng, biz_types), "", choose(rng, trustees),
        "United States", StakeholderClass::kBusiness);
  }
  const std::size_t business_target = kDemoGroups[0].aircraft;
  for (std::size_t i = 0; business < business_target; ++i, ++business) {
    if (i % 3 == 2) {
      add("HB-F" + letters(i / 3, 2), choose(rng, biz_types), "", choose(rng, kWords) + " AG",
          "Switzerland", StakeholderClass::kBusiness);
    } else {
      add(fmt::format("N{}", 30000 + i), i % 5 == 0 ? "" : choose(rng, biz_types),
          i % 5 == 0 ? choose(rng, kWords) + " Executive Jets" : "",
          choose(rng, kWords) + " Aviation Inc", "United States", StakeholderClass::kBusiness);
    }
  }

  // Commercial.
  struct ComGroup {
    std::string prefix;
    int width;
    std::string country;
    std::vector<std::string> operators;
    std::vector<std::string> types;
    std::size_t count;
  };
  const std::vector<ComGroup> com = {
      {"D-A", 3, "Germany", {"Lufthansa", "Condor", "Eurowings", ""}, {"A320", "A21N", "B748", "A359"}, 2000},
      {"G-E", 3, "United Kingdom", {"British Airways", "easyJet", "Nordic Regional Airlines"}, {"A320", "B77W", "A319"}, 1500},
      {"F-G", 3, "France", {"Air France"}, {"A320", "B77W", "A359"}, 1000},
      {"EI-", 3, "Ireland", {"Ryanair", "Aer Lingus"}, {"B738", "A320"}, 900},
      {"HB-J", 2, "Switzerland", {"Swiss", "Edelweiss"}, {"A320", "A333", "BCS3"}, 400},
      {"A6-E", 2, "United Arab Emirates", {"Emirates", "Etihad"}, {"A388", "B77W"}, 400},
      {"N", 0, "United States", {"United", "Delta", "American", "FedEx", "Atlas Cargo"}, {"B738", "B763", "E175"}, 445},
  };
  std::size_t n_com = 0;
  for (const auto& g : com) {
    for (std::size_t i = 0; i < g.count; ++i, ++n_com) {
      const std::string reg =
          g.width == 0 ? fmt::format("N{}", 40000 + i) : g.prefix + letters(i, g.width);
      std::string op = g.operators[i % g.operators.size()];
      std::string type = g.types[i % g.types.size()];
      // A bare operator needs a type the rules know.
      if (op.empty() && type == "B748") type = "A320";
      add(reg, type, op, op.empty() ? "Leasing Corp" : op, g.country,
          StakeholderClass::kCommercial);
    }
  }
  if (n_com != kDemoGroups[1].aircraft) throw std::logic_error("commercial count");

  // Military.
  static const std::vector<std::string> mil_types = {"C17", "A400", "K35R", "C130", "P8"};
  for (std::size_t i = 0; i < 150; ++i)
    add(fmt::format("ZZ{}", 100 + i), choose(rng, mil_types), "Royal Air Force",
        "Ministry of Defence", "United Kingdom", StakeholderClass::kMilitary);
  for (std::size_t i = 0; i < 200; ++i)
    add(fmt::format("AF{}", 10000 + i), choose(rng, mil_types),
        i % 10 == 0 ? "" : "United States Air Force", "", "United States",
        StakeholderClass::kMilitary);
  for (std::size_t i = 0; i < 88; ++i)
    add(fmt::format("GAF{}", 100 + i), choose(rng, mil_types), "Luftwaffe", "", "Germany",
        StakeholderClass::kMilitary);

  // State.
  for (std::size_t i = 0; i < 50; ++i)
    add("HZ-" + letters(i, 3), i % 2 ? "B748" : "GLF5", "Saudi Royal Flight", "",
        "Saudi Arabia", StakeholderClass::kState);
  for (std::size_t i = 0; i < 40; ++i)
    add("A7-H" + letters(i, 2), "A319", "Qatar Amiri Flight", "", "Qatar",
        StakeholderClass::kState);
  for (std::size_t i = 0; i < 30; ++i)
    add("SX-G" + letters(i, 2), "E135", "Hellenic Government", "", "Greece",
        StakeholderClass::kState);
  for (std::size_t i = 0; i < 23; ++i)
    add("TC-" + letters(i, 3), "GLEX", "", "Republic of Turkey", "Turkey",
        StakeholderClass::kState);

  // Nothing in the rules matches these.
  for (std::size_t i = 0; i < kDemoUnclassified; ++i)
    add("G-B" + letters(i, 3), i % 2 ? "PA28" : "C172", "", "Flying Club", "United Kingdom",
        StakeholderClass::kUnknown);

  // Blocks: a shuffled prefix of each group, spread over both levels.
  std::size_t offset = 0;
  for (const auto& g : kDemoGroups) {
    std::vector<std::size_t> idx(g.aircraft);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = offset + i;
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[pick(rng, i)]);
    for (std::size_t k = 0; k < g.blocked; ++k) {
      const auto& reg = fleet.aircraft[idx[k]].registration;
      const auto level = k % 3 == 0 ? registry::BlockLevel::kSubscriber : registry::BlockLevel::kAgency;
      fleet.blocks.push_back({reg, level});
      if (k % 97 == 0) fleet.blocks.push_back({reg, registry::BlockLevel::kSubscriber});
    }
    offset += g.aircraft;
  }
  // Blocked but absent from the registry.
  for (std::size_t i = 0; i < 15; ++i)
    fleet.blocks.push_back({fmt::format("N{}", 90000 + i), registry::BlockLevel::kAgency});
  return fleet;
}

std::string registry_csv(std::span<const AircraftRecord> aircraft) {
  std::string out = "icao24,registration,type,operator,owner,country,source\n";
  for (const auto& r : aircraft) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.icao24.value_or(""), csv_escape(r.registration),
                       csv_escape(r.ac_type), csv_escape(r.operator_name), csv_escape(r.owner),
                       csv_escape(r.country), csv_escape(r.source));
  }
  return out;
}

std::string blocklist_csv(std::span<const registry::BlockEntry> blocks) {
  std::string out = "registration,level\n";
  for (const auto& b : blocks)
    out += fmt::format("{},{}\n", b.registration, registry::to_string(b.level));
  return out;
}

std::vector<LabeledRecord> labeled_corpus(std::uint64_t seed, std::size_t min_messages) {
  std::mt19937_64 rng(seed);
  const std::vector<Gen> gens = {position,     atis_request,   atis_report,  clearance_request,
                                 clearance_delivery, flight_plan, weather,    position_and_weather,
                                 card_full,    card_partial,   card_context, medical_full,
                                 medical_context, manifest,    manifest_solicit, email,
                                 existence,    existence};
  std::vector<cipher::Key> keys;
  for (int i = 0; i < 4; ++i) keys.push_back(cipher::Key::random(rng));

  std::vector<LabeledRecord> out;
  double ts = 1500000000.0;
  int seq = 0;
  auto push = [&](const Msg& m) {
    const std::string reg = fmt::format("N{}{}", 500 + pick(rng, 400), letters(pick(rng, 676), 2));
    LabeledRecord lr;
    lr.record = to_record(rng, reg, m, ts, seq++, flight_for(reg));
    lr.expect = m.expect;
    ts += 1.0 + static_cast<double>(pick(rng, 90));
    out.push_back(std::move(lr));
  };
  push(big_manifest(rng));
  while (out.size() < min_messages) {
    const std::size_t k = pick(rng, gens.size() + 2);
    if (k >= gens.size()) {
      const auto& key = keys[pick(rng, keys.size())];
      push({"80", key.encipher(crib().generate(rng)), true, {Category::kEncryptedWeak}});
    } else {
      push(gens[k](rng));
    }
  }
  return out;
}

std::string labeled_jsonl(std::span<const LabeledRecord> corpus) {
  std::string out;
  for (const auto& lr : corpus) {
    auto j = nlohmann::ordered_json::parse(ingest::to_jsonl(lr.record));
    auto expect = nlohmann::ordered_json::array();
    for (auto c : lr.expect) expect.push_back(std::string(content::to_string(c)));
    j["expect"] = std::move(expect);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<LabeledRecord> read_labeled_jsonl(const std::filesystem::path& path) {
  const auto loaded = ingest::load_corpus(path, ingest::CorpusFormat::kJsonl);
  const auto lines = split(read_file(path), '\n');
  std::vector<LabeledRecord> out;
  std::size_t next = 0;
  for (const auto& line : lines) {
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto j = nlohmann::json::parse(line);
    LabeledRecord lr;
    if (next >= loaded.records.size()) throw std::runtime_error("labeled corpus out of sync");
    lr.record = loaded.records[next++];
    for (const auto& c : j.at("expect")) {
      const auto cat = content::parse_category(c.get<std::string>());
      if (!cat) throw std::runtime_error("unknown category in labeled corpus");
      lr.expect.insert(*cat);
    }
    out.push_back(std::move(lr));
  }
  return out;
}

std::vector<AcarsRecord> demo_corpus(const DemoFleet& fleet, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<StakeholderClass, std::vector<const AircraftRecord*>> by_class;
  {
    std::size_t offset = 0;
    for (const auto& g : kDemoGroups) {
      for (std::size_t i = 0; i < g.aircraft; ++i)
        by_class[g.cls].push_back(&fleet.aircraft[offset + i]);
      offset += g.aircraft;
    }
  }
  const std::map<StakeholderClass, std::vector<Gen>> menus = {
      {StakeholderClass::kBusiness,
       {position, position, atis_request, atis_report, clearance_request, weather,
        position_and_weather, manifest_solicit, medical_context, email, existence}},
      {StakeholderClass::kCommercial,
       {position, position, atis_request, atis_report, clearance_request, clearance_delivery,
        flight_plan, weather, card_full, card_partial, card_context, medical_full,
        medical_context, manifest, manifest_solicit, email, existence, existence}},
      {StakeholderClass::kMilitary,
       {position, flight_plan, clearance_request, weather, manifest_solicit, existence}},
      {StakeholderClass::kState,
       {position, atis_request, clearance_delivery, email, existence}},
  };
  const std::map<StakeholderClass, std::pair<std::size_t, std::size_t>> sample = {
      {StakeholderClass::kBusiness, {160, 6}},
      {StakeholderClass::kCommercial, {420, 5}},
      {StakeholderClass::kMilitary, {45, 5}},
      {StakeholderClass::kState, {25, 6}},
  };

  struct Planned {
    std::string registration;
    Msg msg;
  };
  std::vector<Planned> plan;
  for (const auto& [cls, pool] : by_class) {
    const auto [aircraft, per] = sample.at(cls);
    const auto& menu = menus.at(cls);
    for (std::size_t a = 0; a < aircraft; ++a) {
      const auto* rec = pool[pick(rng, pool.size())];
      const std::size_t n = 1 + pick(rng, 2 * per);
      for (std::size_t k = 0; k < n; ++k) plan.push_back({rec->registration, choose(rng, menu)(rng)});
    }
  }
  // Aircraft missing from the registry.
  for (std::size_t a = 0; a < 30; ++a) {
    const std::string reg = "OE-U" + letters(a, 2);
    for (std::size_t k = 0; k < 3; ++k)
      plan.push_back({reg, pick(rng, 2) ? position(rng) : existence(rng)});
  }
  // Weakly enciphered position reports from three business jets.
  const auto& business = by_class.at(StakeholderClass::kBusiness);
  for (std::size_t a = 0; a < 3; ++a) {
    const auto* rec = business[(a * 577) % business.size()];
    const auto key = cipher::Key::random(rng);
    for (auto& c : enciphered_reports(crib(), key, 60, rng))
      plan.push_back({rec->registration, {"80", std::move(c), true, {Category::kEncryptedWeak}}});
  }
  for (std::size_t i = plan.size(); i > 1; --i) std::swap(plan[i - 1], plan[pick(rng, i)]);

  std::vector<AcarsRecord> out;
  double ts = 1500000000.0;
  int seq = 0;
  for (const auto& p : plan) {
    auto r = to_record(rng, p.registration, p.msg, ts, seq++, flight_for(p.registration));
    if (pick(rng, 50) == 0) r.capture_errors = 1;
    if (pick(rng, 80) == 0) {
      r.link = Link::kHf;
      r.frequency_mhz = 8.977;
      r.direction = Direction::kUnknown;
    }
    out.push_back(r);
    // The same downlink heard on a second VHF channel.
    if (r.link == Link::kVhfPoa && p.msg.downlink && pick(rng, 8) == 0) {
      auto dup = r;
      dup.timestamp += 1.0 + static_cast<double>(pick(rng, 4));
      dup.frequency_mhz = kVhfChannels[(pick(rng, 2) + 1) % 3];
      out.push_back(dup);
    }
    ts += 5.0 + static_cast<double>(pick(rng, 55));
  }
  // Frames too short to parse.
  for (std::size_t i = 0; i < 6; ++i) {
    AcarsRecord r;
    r.timestamp = ts + static_cast<double>(i);
    r.link = Link::kVhfPoa;
    r.frequency_mhz = 131.525;
    r.raw_frame = "2.N1";
    out.push_back(r);
  }
  return out;
}

GradeFixture grade_fixture() {
  GradeFixture g;
  auto add = [&](std::string icao, std::string reg, std::string type, std::string op,
                 std::string owner, std::string country) {
    AircraftRecord r;
    r.icao24 = std::move(icao);
    r.registration = std::move(reg);
    r.ac_type = std::move(type);
    r.operator_name = std::move(op);
    r.owner = std::move(owner);
    r.country = std::move(country);
    r.source = "fixture";
    g.aircraft.push_back(std::move(r));
  };
  add("a1b2c3", "N501GX", "GLF5", "", "N501GX LLC", "United States");
  add("400a01", "G-EUPA", "A320", "British Airways", "British Airways", "United Kingdom");
  add("43c6f1", "ZZ336", "A400", "Royal Air Force", "Ministry of Defence", "United Kingdom");
  add("710111", "HZ-HMS", "B748", "Saudi Royal Flight", "", "Saudi Arabia");

  double ts = 1600000000.0;
  int seq = 0;
  auto rec = [&](std::string_view reg, std::string_view label, std::string_view text,
                 bool downlink, Link link) {
    AcarsRecord r;
    r.timestamp = ts;
    ts += 60.0;
    r.link = link;
    r.direction = downlink ? Direction::kDownlink : Direction::kUplink;
    r.raw_frame = make_frame(reg, label, text, downlink, seq++, flight_for(reg));
    g.records.push_back(std::move(r));
  };
  // Business: position downlink, an uplinked ATIS report naming the
  // destination, and an uplink asking for passenger connections.
  rec("N501GX", "5Q", "POS N47.46 E008.54,FL360,ETA 1420", true, Link::kVhfPoa);
  rec("N501GX", "A9", "LSGG ARR INFO D 1420Z RWY 23 IN USE", false, Link::kSatcomUplink);
  rec("N501GX", "RA", "PLS ADV PAX NAMES AND CONX FOR LX1234", false, Link::kSatcomUplink);
  // Commercial: a full card transaction downlinked.
  rec("G-EUPA", "5Z", "PAX CARD PAYMENT 4111111111111111 EXP 12/19 CVV 123 USD 750.00", true,
      Link::kVdlm2);
  rec("G-EUPA", "16", "POS N51.47 W000.45,FL120", true, Link::kVdlm2);
  // Military: flight plan uplink, position downlink, manifest solicitation.
  rec("ZZ336", "H2", "FPN/RI:DA:LMML:AA:OTHH:F:TRA.BERSU", false, Link::kSatcomUplink);
  rec("ZZ336", "5Q", "POS N 35 51.5 E 014 28.6 FL310", true, Link::kSatcomDownlink);
  rec("ZZ336", "RA", "REQ PAX CONNECTIONS LIST BEFORE LANDING", false, Link::kSatcomUplink);
  // State: position, clearance with endpoints, an email address only.
  rec("HZ-HMS", "16", "POS N46.23 E006.10,FL380,ETA 0915", true, Link::kVhfPoa);
  rec("HZ-HMS", "B3", "REQ PDC SVA001 LSGG OERK STAND 4", true, Link::kVhfPoa);
  rec("HZ-HMS", "C1", "EMAIL FROM: PROTOCOL AT PROTOCOL@EXAMPLE.GOV", false,
      Link::kSatcomUplink);
  return g;
}

std::string corpus_jsonl(std::span<const AcarsRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += ingest::to_jsonl(r);
    out.push_back('\n');
  }
  return out;
}

std::vector<std::string> enciphered_reports(const cipher::CribTemplate& tpl,
                                            const cipher::Key& key, std::size_t count,
                                            std::mt19937_64& rng) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(key.encipher(tpl.generate(rng)));
  return out;
}

std::string random_alphabet_text(std::mt19937_64& rng, std::size_t length) {
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(cipher::kAlphabet[pick(rng, cipher::kAlphabetSize)]);
  return out;
}

}  // namespace acars_audit::synth
