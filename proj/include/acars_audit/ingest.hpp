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

// Loading, validation, deduplication and link partitioning of captured
// ACARS frame records.
//
// Two on-disk formats are read:
//
//   jsonl   one JSON object per line with the fields
//           ts (number), link (string), freq (number, MHz, optional),
//           dir (string, optional), frame (string), err (integer, optional)
//   rawlog  "<epoch-seconds> <freq-mhz> : <frame-text>"; the link is
//           inferred from the frequency band.
//
// Malformed lines are skipped and counted. A file where more than half of
// the non-blank lines are malformed is rejected outright.

#ifndef ACARS_AUDIT_INGEST_HPP_
#define ACARS_AUDIT_INGEST_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acars_audit::ingest {

enum class Link { kVhfPoa, kVdlm2, kSatcomUplink, kSatcomDownlink, kHf };
inline constexpr std::array<Link, 5> kAllLinks = {
    Link::kVhfPoa, Link::kVdlm2, Link::kSatcomUplink, Link::kSatcomDownlink,
    Link::kHf};

enum class Direction { kUplink, kDownlink, kUnknown };

std::string_view to_string(Link link);
std::optional<Link> parse_link(std::string_view s);
std::string_view to_string(Direction dir);
std::optional<Direction> parse_direction(std::string_view s);

bool is_vhf(Link link);
bool is_satcom(Link link);

/// Band-based link inference used by the rawlog reader. VHF frequencies map
/// to plain-old ACARS since the log line does not say which VHF mode it was.
std::optional<Link> link_for_frequency(double mhz);

struct AcarsRecord {
  std::string record_id;
  double timestamp = 0.0;  // UTC seconds since epoch, > 0
  Link link = Link::kVhfPoa;
  std::optional<double> frequency_mhz;  // in [0.1, 10000] when present
  Direction direction = Direction::kUnknown;
  std::string raw_frame;
  int capture_errors = 0;

  /// HF is accepted but outside the collection setup this tool models.
  bool out_of_scope_link() const { return link == Link::kHf; }
  bool has_capture_errors() const { return capture_errors > 0; }

  bool operator==(const AcarsRecord&) const = default;
};

/// Recorded direction, or the link default when unknown: SATCOM uplink and
/// downlink channels speak for themselves, VHF receivers mostly hear
/// aircraft, HF stays unknown.
Direction effective_direction(const AcarsRecord& record);

enum class CorpusFormat { kJsonl, kRawlog };
std::optional<CorpusFormat> parse_corpus_format(std::string_view s);

struct LoadSummary {
  std::string path;
  std::size_t lines = 0;  // non-blank lines seen
  std::size_t records = 0;
  std::size_t skipped = 0;
  std::size_t hf_records = 0;
  std::size_t with_capture_errors = 0;
  std::size_t first_bad_line = 0;  // 0 when nothing was skipped
  std::string first_bad_reason;

  void merge(const LoadSummary& other);
};

struct LoadedCorpus {
  std::vector<AcarsRecord> records;
  LoadSummary summary;
};

/// Reads one corpus file. Record ids are "<file name>:<line number>".
/// Throws IoError when unreadable, CorpusRejected when >50% of the lines
/// are malformed.
LoadedCorpus load_corpus(const std::filesystem::path& path,
                         CorpusFormat format);

struct CorpusSource {
  std::filesystem::path path;
  CorpusFormat format = CorpusFormat::kJsonl;
};

/// Loads several files (concurrently when built with OpenMP) and
/// concatenates them ordered by timestamp; ties keep input order.
LoadedCorpus load_corpora(std::span<const CorpusSource> sources);

/// Single-line readers. On failure return nullopt and set `reason`.
std::optional<AcarsRecord> parse_jsonl_line(std::string_view line,
                                            std::string record_id,
                                            std::string* reason);
std::optional<AcarsRecord> parse_rawlog_line(std::string_view line,
                                             std::string record_id,
                                             std::string* reason);

/// Canonical jsonl form of a record (the record id is not part of it).
std::string to_jsonl(const AcarsRecord& record);

inline constexpr double kDefaultDedupWindowS = 30.0;

/// Removes records whose duplicate key (registration, label, message
/// number, text hash) matches an already kept record within `window_s`
/// seconds. Frames that do not parse are keyed by their raw bytes.
/// Survivor order is preserved and the operation is idempotent.
std::vector<AcarsRecord> dedupe(std::span<const AcarsRecord> records,
                                double window_s);

/// Every record lands in exactly one bucket.
std::map<Link, std::vector<AcarsRecord>> partition_by_link(
    std::span<const AcarsRecord> records);

}  // namespace acars_audit::ingest

#endif  // ACARS_AUDIT_INGEST_HPP_
