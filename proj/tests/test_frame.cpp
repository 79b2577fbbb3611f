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

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "acars_audit/frame.hpp"
#include "acars_audit/labels.hpp"
#include "synth.hpp"

namespace acars_audit::frame {
namespace {

AcarsMessage example_message() {
  AcarsMessage m;
  m.mode = '2';
  m.registration = "N123AB";
  m.tech_ack = '!';
  m.label = "5Q";
  m.block_id = '1';
  m.msg_no = "M01A";
  m.flight_id = "LX789";
  m.text = "POS N47.46 E008.54";
  return m;
}

TEST(ParseFrame, ExampleRoundTrip) {
  const auto m = example_message();
  const auto wire = serialize_frame(m);
  const auto back = parse_frame(wire);
  ASSERT_TRUE(std::holds_alternative<AcarsMessage>(back));
  const auto& got = std::get<AcarsMessage>(back);
  EXPECT_EQ(got, m);
  EXPECT_EQ(got.mode, '2');
  EXPECT_EQ(got.registration, "N123AB");
  EXPECT_EQ(got.label, "5Q");
  EXPECT_EQ(got.text, "POS N47.46 E008.54");
}

TEST(ParseFrame, EmptyIsTooShort) {
  const auto r = parse_frame(std::string_view{});
  ASSERT_TRUE(std::holds_alternative<ParseFailure>(r));
  EXPECT_EQ(std::get<ParseFailure>(r).reason, ParseError::kTooShort);
}

TEST(ParseFrame, IllegalLabelCharacter) {
  const auto r = parse_frame(std::string_view("2.N123AB.H!1"));
  ASSERT_TRUE(std::holds_alternative<ParseFailure>(r));
  EXPECT_EQ(std::get<ParseFailure>(r).reason, ParseError::kBadLabel);
  EXPECT_EQ(std::get<ParseFailure>(r).position, 10u);
}

TEST(ParseFrame, BadMessageNumber) {
  std::string wire = serialize_frame(example_message());
  wire[13] = '7';  // first msg_no character must be a letter
  const auto r = parse_frame(wire);
  ASSERT_TRUE(std::holds_alternative<ParseFailure>(r));
  EXPECT_EQ(std::get<ParseFailure>(r).reason, ParseError::kBadMsgNo);
}

TEST(ParseFrame, SourceCarriesRecordId) {
  ingest::AcarsRecord rec;
  rec.record_id = "c.jsonl:7";
  rec.raw_frame = serialize_frame(example_message());
  const auto r = parse_frame(rec);
  ASSERT_TRUE(std::holds_alternative<AcarsMessage>(r));
  EXPECT_EQ(std::get<AcarsMessage>(r).source, "c.jsonl:7");
}

TEST(SerializeFrame, ShortRegistrationIsPadded) {
  auto m = example_message();
  m.registration = "N1";
  const auto wire = serialize_frame(m);
  EXPECT_EQ(wire.substr(0, 8), "2.....N1");
  EXPECT_EQ(std::get<AcarsMessage>(parse_frame(wire)).registration, "N1");
}

TEST(SerializeFrame, EmptyTextHeaderOnly) {
  AcarsMessage m;
  m.registration = "G-EUPA";
  m.label = "_d";
  const auto wire = serialize_frame(m);
  EXPECT_EQ(wire.size(), kHeaderSize);
  const auto back = std::get<AcarsMessage>(parse_frame(wire));
  EXPECT_TRUE(back.text.empty());
  EXPECT_EQ(back, m);
}

TEST(SerializeFrame, RejectsInvariantViolations) {
  auto m = example_message();
  m.label = "5";
  EXPECT_THROW(serialize_frame(m), std::invalid_argument);
  m = example_message();
  m.registration = "";
  EXPECT_THROW(serialize_frame(m), std::invalid_argument);
  m = example_message();
  m.registration = "n123ab";
  EXPECT_THROW(serialize_frame(m), std::invalid_argument);
  m = example_message();
  m.msg_no = "01A1";
  EXPECT_THROW(serialize_frame(m), std::invalid_argument);
  m = example_message();
  m.msg_no.reset();
  EXPECT_THROW(serialize_frame(m), std::invalid_argument);  // flight id without msg_no
}

TEST(RoundTrip, RandomMessages) {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 2000; ++i) {
    const auto m = synth::random_message(rng);
    ASSERT_FALSE(check_invariants(m)) << *check_invariants(m);
    const auto back = parse_frame(serialize_frame(m));
    ASSERT_TRUE(std::holds_alternative<AcarsMessage>(back)) << i;
    ASSERT_EQ(std::get<AcarsMessage>(back), m) << i;
  }
}

TEST(Fuzz, ParseIsTotal) {
  std::mt19937_64 rng(808);
  for (int i = 0; i < 20000; ++i) {
    const auto bytes = synth::random_bytes(rng, 64);
    const auto r = parse_frame(bytes);
    if (const auto* m = std::get_if<AcarsMessage>(&r)) {
      EXPECT_FALSE(check_invariants(*m));
      EXPECT_EQ(m->label.size(), 2u);
    } else {
      EXPECT_LE(std::get<ParseFailure>(r).position, bytes.size());
    }
  }
}

TEST(Labels, B9IsAtisRequest) {
  const auto reg = LabelRegistry::load(std::string(ACARS_AUDIT_DATA_DIR) + "/labels.csv");
  EXPECT_EQ(reg.lookup("B9").category, LabelCategory::kAtisRequest);
  auto m = example_message();
  m.label = "B9";
  m.text = "ATIS REQ LSZH";
  const auto parsed = std::get<AcarsMessage>(parse_frame(serialize_frame(m)));
  EXPECT_EQ(reg.lookup(parsed.label).category, LabelCategory::kAtisRequest);
}

TEST(Labels, UnknownFallsBackToOther) {
  const auto reg = LabelRegistry::load(std::string(ACARS_AUDIT_DATA_DIR) + "/labels.csv");
  const auto e = reg.lookup("ZZ");
  EXPECT_EQ(e.category, LabelCategory::kOther);
  EXPECT_EQ(e.label, "ZZ");
  EXPECT_EQ(reg.lookup("ZZ"), e);
}

TEST(Labels, AgreesWithShippedTable) {
  // Read the file independently and compare every row with the registry.
  const std::string path = std::string(ACARS_AUDIT_DATA_DIR) + "/labels.csv";
  const auto reg = LabelRegistry::load(path);
  std::ifstream in(path);
  std::string line;
  std::size_t rows = 0;
  bool header = true;
  bool saw_sq = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto label = line.substr(0, c1);
    const auto category = line.substr(c1 + 1, c2 - c1 - 1);
    EXPECT_EQ(to_string(reg.lookup(label).category), category) << label;
    if (label == "SQ") {
      saw_sq = true;
      EXPECT_EQ(category, "NETWORK_MGMT");
    }
    ++rows;
  }
  EXPECT_TRUE(saw_sq);
  EXPECT_EQ(rows, reg.size());
}

TEST(Labels, DuplicateLabelRejected) {
  std::vector<LabelEntry> entries = {{"B9", LabelCategory::kAtisRequest, "a"},
                                     {"B9", LabelCategory::kOther, "b"}};
  EXPECT_THROW(LabelRegistry{entries}, std::invalid_argument);
}

}  // namespace
}  // namespace acars_audit::frame
