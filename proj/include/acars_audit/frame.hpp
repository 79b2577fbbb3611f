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

// ACARS frame text <-> structured message.
//
// Layout (byte offsets), see docs/frame_format.md:
//
//   0       mode
//   1..7    aircraft address, right aligned, left padded with '.'
//   8       technical acknowledgement
//   9..10   label
//   11      block id, '.' when absent
//   12      STX (0x02) when a message number follows, else text starts here
//   13..16  message number
//   17..22  flight id, right padded with '.'
//   23..    text
//
// Frames without the STX marker (typically uplinks) carry neither message
// number nor flight id.

#ifndef ACARS_AUDIT_FRAME_HPP_
#define ACARS_AUDIT_FRAME_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "acars_audit/ingest.hpp"

namespace acars_audit::frame {

inline constexpr std::size_t kHeaderSize = 12;
inline constexpr std::size_t kAddressWidth = 7;
inline constexpr std::size_t kMsgNoWidth = 4;
inline constexpr std::size_t kFlightIdWidth = 6;
inline constexpr char kPad = '.';
inline constexpr char kStx = '\x02';
inline constexpr char kNak = '\x15';

struct AcarsMessage {
  char mode = '2';
  std::string registration;  // normalized: no padding dots
  char tech_ack = '!';
  std::string label;  // always 2 characters
  std::optional<char> block_id;
  std::optional<std::string> msg_no;
  std::optional<std::string> flight_id;
  std::string text;
  std::string source;  // record id of the originating AcarsRecord

  bool operator==(const AcarsMessage&) const = default;
};

enum class ParseError {
  kTooShort,
  kBadMode,
  kBadRegistration,
  kBadAck,
  kBadLabel,
  kBadBlockId,
  kBadMsgNo,
  kBadFlightId,
};

std::string_view to_string(ParseError e);

struct ParseFailure {
  ParseError reason = ParseError::kTooShort;
  std::size_t position = 0;

  bool operator==(const ParseFailure&) const = default;
};

using ParseResult = std::variant<AcarsMessage, ParseFailure>;

/// Never throws; any byte string yields a message or a failure.
ParseResult parse_frame(std::string_view frame);

/// As above, with `source` set to the record id.
ParseResult parse_frame(const ingest::AcarsRecord& record);

/// Returns a description of the first invariant `msg` violates.
std::optional<std::string> check_invariants(const AcarsMessage& msg);

/// Inverse of parse_frame. Throws std::invalid_argument when `msg`
/// violates the message invariants.
std::string serialize_frame(const AcarsMessage& msg);

bool is_valid_label(std::string_view label);
bool is_valid_msg_no(std::string_view msg_no);
bool is_valid_registration(std::string_view registration);

}  // namespace acars_audit::frame

#endif  // ACARS_AUDIT_FRAME_HPP_
