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

#include "acars_audit/frame.hpp"

#include <stdexcept>

namespace acars_audit::frame {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_graphic(char c) { return c >= 0x21 && c <= 0x7E; }

bool is_label_char(char c) {
  return is_upper(c) || is_lower(c) || is_digit(c) || c == '_';
}
bool is_block_char(char c) { return is_upper(c) || is_lower(c) || is_digit(c); }
bool is_registration_char(char c) {
  return is_upper(c) || is_digit(c) || c == '-';
}
bool is_flight_char(char c) { return is_upper(c) || is_digit(c); }
bool is_valid_mode(char c) { return is_graphic(c); }
bool is_valid_ack(char c) { return is_graphic(c) || c == kNak; }

bool is_valid_flight_id(std::string_view f) {
  if (f.empty() || f.size() > kFlightIdWidth) return false;
  for (char c : f)
    if (!is_flight_char(c)) return false;
  return true;
}

}  // namespace

std::string_view to_string(ParseError e) {
  switch (e) {
    case ParseError::kTooShort: return "too_short";
    case ParseError::kBadMode: return "bad_mode";
    case ParseError::kBadRegistration: return "bad_registration";
    case ParseError::kBadAck: return "bad_ack";
    case ParseError::kBadLabel: return "bad_label";
    case ParseError::kBadBlockId: return "bad_block_id";
    case ParseError::kBadMsgNo: return "bad_msg_no";
    case ParseError::kBadFlightId: return "bad_flight_id";
  }
  return "unknown";
}

bool is_valid_label(std::string_view label) {
  return label.size() == 2 && is_label_char(label[0]) &&
         is_label_char(label[1]);
}

bool is_valid_msg_no(std::string_view m) {
  return m.size() == kMsgNoWidth && is_upper(m[0]) && is_digit(m[1]) &&
         is_digit(m[2]) && (is_upper(m[3]) || is_digit(m[3]));
}

bool is_valid_registration(std::string_view r) {
  if (r.empty() || r.size() > kAddressWidth) return false;
  for (char c : r)
    if (!is_registration_char(c)) return false;
  return true;
}

ParseResult parse_frame(std::string_view f) {
  if (f.size() < kHeaderSize) return ParseFailure{ParseError::kTooShort, f.size()};

  AcarsMessage msg;
  if (!is_valid_mode(f[0])) return ParseFailure{ParseError::kBadMode, 0};
  msg.mode = f[0];

  auto address = f.substr(1, kAddressWidth);
  std::size_t pad = 0;
  while (pad < address.size() && address[pad] == kPad) ++pad;
  address.remove_prefix(pad);
  if (!is_valid_registration(address)) {
    return ParseFailure{ParseError::kBadRegistration, 1 + pad};
  }
  msg.registration = std::string(address);

  if (!is_valid_ack(f[8])) return ParseFailure{ParseError::kBadAck, 8};
  msg.tech_ack = f[8];

  if (!is_label_char(f[9])) return ParseFailure{ParseError::kBadLabel, 9};
  if (!is_label_char(f[10])) return ParseFailure{ParseError::kBadLabel, 10};
  msg.label = std::string(f.substr(9, 2));

  if (f[11] != kPad) {
    if (!is_block_char(f[11])) return ParseFailure{ParseError::kBadBlockId, 11};
    msg.block_id = f[11];
  }

  std::size_t text_start = kHeaderSize;
  if (f.size() > kHeaderSize && f[kHeaderSize] == kStx) {
    const std::size_t msg_at = kHeaderSize + 1;
    const std::size_t flight_at = msg_at + kMsgNoWidth;
    text_start = flight_at + kFlightIdWidth;
    if (f.size() < text_start) return ParseFailure{ParseError::kTooShort, f.size()};
    const auto msg_no = f.substr(msg_at, kMsgNoWidth);
    if (!is_valid_msg_no(msg_no)) return ParseFailure{ParseError::kBadMsgNo, msg_at};
    msg.msg_no = std::string(msg_no);

    auto flight = f.substr(flight_at, kFlightIdWidth);
    while (!flight.empty() && flight.back() == kPad) flight.remove_suffix(1);
    if (!flight.empty()) {
      if (!is_valid_flight_id(flight)) {
        return ParseFailure{ParseError::kBadFlightId, flight_at};
      }
      msg.flight_id = std::string(flight);
    }
  }
  msg.text = std::string(f.substr(text_start));
  return msg;
}

ParseResult parse_frame(const ingest::AcarsRecord& record) {
  auto result = parse_frame(std::string_view(record.raw_frame));
  if (auto* msg = std::get_if<AcarsMessage>(&result)) msg->source = record.record_id;
  return result;
}

std::optional<std::string> check_invariants(const AcarsMessage& m) {
  if (!is_valid_mode(m.mode)) return "mode must be a printable character";
  if (!is_valid_registration(m.registration)) {
    return "registration must be 1-7 characters of A-Z, 0-9 or '-'";
  }
  if (!is_valid_ack(m.tech_ack)) return "technical ack must be printable or NAK";
  if (!is_valid_label(m.label)) return "label must be exactly 2 label characters";
  if (m.block_id && !is_block_char(*m.block_id)) return "block id must be alphanumeric";
  if (m.msg_no && !is_valid_msg_no(*m.msg_no)) {
    return "message number must match [A-Z][0-9]{2}[A-Z0-9]";
  }
  if (m.flight_id) {
    if (!m.msg_no) return "flight id requires a message number";
    if (!is_valid_flight_id(*m.flight_id)) return "flight id must be 1-6 of A-Z, 0-9";
  }
  if (!m.msg_no && !m.text.empty() && m.text.front() == kStx) {
    return "text may not start with STX when no message number is present";
  }
  return std::nullopt;
}

std::string serialize_frame(const AcarsMessage& m) {
  if (auto why = check_invariants(m)) throw std::invalid_argument(*why);
  std::string out;
  out.reserve(kHeaderSize + 1 + kMsgNoWidth + kFlightIdWidth + m.text.size());
  out.push_back(m.mode);
  out.append(kAddressWidth - m.registration.size(), kPad);
  out += m.registration;
  out.push_back(m.tech_ack);
  out += m.label;
  out.push_back(m.block_id.value_or(kPad));
  if (m.msg_no) {
    out.push_back(kStx);
    out += *m.msg_no;
    const std::string flight = m.flight_id.value_or("");
    out += flight;
    out.append(kFlightIdWidth - flight.size(), kPad);
  }
  out += m.text;
  return out;
}

}  // namespace acars_audit::frame
