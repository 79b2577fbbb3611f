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

#include "acars_audit/ingest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "acars_audit/digest.hpp"
#include "acars_audit/errors.hpp"
#include "acars_audit/frame.hpp"
#include "acars_audit/text.hpp"

namespace acars_audit::ingest {
namespace {

using nlohmann::json;

constexpr double kMinFrequencyMhz = 0.1;
constexpr double kMaxFrequencyMhz = 10000.0;

bool frequency_in_range(double mhz) {
  return std::isfinite(mhz) && mhz >= kMinFrequencyMhz && mhz <= kMaxFrequencyMhz;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

}  // namespace

std::string_view to_string(Link link) {
  switch (link) {
    case Link::kVhfPoa: return "VHF_POA";
    case Link::kVdlm2: return "VDLM2";
    case Link::kSatcomUplink: return "SATCOM_UPLINK";
    case Link::kSatcomDownlink: return "SATCOM_DOWNLINK";
    case Link::kHf: return "HF";
  }
  return "?";
}

std::optional<Link> parse_link(std::string_view s) {
  for (Link l : kAllLinks)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

std::string_view to_string(Direction dir) {
  switch (dir) {
    case Direction::kUplink: return "uplink";
    case Direction::kDownlink: return "downlink";
    case Direction::kUnknown: return "unknown";
  }
  return "?";
}

std::optional<Direction> parse_direction(std::string_view s) {
  for (Direction d : {Direction::kUplink, Direction::kDownlink, Direction::kUnknown})
    if (to_string(d) == s) return d;
  return std::nullopt;
}

bool is_vhf(Link link) { return link == Link::kVhfPoa || link == Link::kVdlm2; }
bool is_satcom(Link link) {
  return link == Link::kSatcomUplink || link == Link::kSatcomDownlink;
}

std::optional<Link> link_for_frequency(double mhz) {
  if (mhz >= 2.0 && mhz < 30.0) return Link::kHf;
  if (mhz >= 118.0 && mhz <= 137.0) return Link::kVhfPoa;
  if (mhz >= 1525.0 && mhz <= 1559.0) return Link::kSatcomUplink;
  if (mhz >= 1626.5 && mhz <= 1660.5) return Link::kSatcomDownlink;
  return std::nullopt;
}

Direction effective_direction(const AcarsRecord& r) {
  if (r.direction != Direction::kUnknown) return r.direction;
  switch (r.link) {
    case Link::kSatcomUplink: return Direction::kUplink;
    case Link::kSatcomDownlink:
    case Link::kVhfPoa:
    case Link::kVdlm2: return Direction::kDownlink;
    case Link::kHf: return Direction::kUnknown;
  }
  return Direction::kUnknown;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::kJsonl;
  if (s == "rawlog") return CorpusFormat::kRawlog;
  return std::nullopt;
}

void LoadSummary::merge(const LoadSummary& o) {
  if (first_bad_line == 0 && o.first_bad_line != 0) {
    first_bad_line = o.first_bad_line;
    first_bad_reason = o.path + ": " + o.first_bad_reason;
  }
  path = path.empty() ? o.path : path + "," + o.path;
  lines += o.lines;
  records += o.records;
  skipped += o.skipped;
  hf_records += o.hf_records;
  with_capture_errors += o.with_capture_errors;
}

std::optional<AcarsRecord> parse_jsonl_line(std::string_view line,
                                            std::string record_id,
                                            std::string* reason) {
  const auto fail = [&](std::string why) -> std::optional<AcarsRecord> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return fail("invalid JSON");
  if (!j.is_object()) return fail("not a JSON object");

  AcarsRecord r;
  r.record_id = std::move(record_id);

  const auto ts = j.find("ts");
  if (ts == j.end() || !ts->is_number()) return fail("missing numeric 'ts'");
  r.timestamp = ts->get<double>();
  if (!(r.timestamp > 0.0) || !std::isfinite(r.timestamp)) {
    return fail("'ts' must be positive");
  }

  const auto link = j.find("link");
  if (link == j.end() || !link->is_string()) return fail("missing string 'link'");
  const auto parsed_link = parse_link(link->get<std::string>());
  if (!parsed_link) return fail("unknown link '" + link->get<std::string>() + "'");
  r.link = *parsed_link;

  if (const auto freq = j.find("freq"); freq != j.end() && !freq->is_null()) {
    if (!freq->is_number()) return fail("'freq' must be a number");
    const double mhz = freq->get<double>();
    if (!frequency_in_range(mhz)) return fail("'freq' outside [0.1, 10000] MHz");
    r.frequency_mhz = mhz;
  }

  if (const auto dir = j.find("dir"); dir != j.end() && !dir->is_null()) {
    if (!dir->is_string()) return fail("'dir' must be a string");
    const auto d = parse_direction(dir->get<std::string>());
    if (!d) return fail("unknown direction '" + dir->get<std::string>() + "'");
    r.direction = *d;
  }

  const auto frame = j.find("frame");
  if (frame == j.end() || !frame->is_string()) return fail("missing string 'frame'");
  r.raw_frame = frame->get<std::string>();
  if (r.raw_frame.empty()) return fail("empty 'frame'");

  if (const auto err = j.find("err"); err != j.end() && !err->is_null()) {
    if (!err->is_number_integer()) return fail("'err' must be an integer");
    const auto e = err->get<long long>();
    if (e < 0 || e > std::numeric_limits<int>::max()) return fail("'err' out of range");
    r.capture_errors = static_cast<int>(e);
  }
  return r;
}

std::optional<AcarsRecord> parse_rawlog_line(std::string_view line,
                                             std::string record_id,
                                             std::string* reason) {
  const auto fail = [&](std::string why) -> std::optional<AcarsRecord> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto sep = line.find(" : ");
  if (sep == std::string_view::npos) return fail("missing ' : ' separator");
  const auto head = trim(line.substr(0, sep));
  const auto body = line.substr(sep + 3);

  const auto space = head.find(' ');
  if (space == std::string_view::npos) return fail("expected '<epoch> <freq>'");
  const auto ts = parse_double(trim(head.substr(0, space)));
  const auto mhz = parse_double(trim(head.substr(space + 1)));
  if (!ts || !(*ts > 0.0)) return fail("bad epoch seconds");
  if (!mhz || !frequency_in_range(*mhz)) return fail("bad frequency");
  const auto link = link_for_frequency(*mhz);
  if (!link) return fail("frequency outside known ACARS bands");
  if (body.empty()) return fail("empty frame");

  AcarsRecord r;
  r.record_id = std::move(record_id);
  r.timestamp = *ts;
  r.link = *link;
  r.frequency_mhz = *mhz;
  r.raw_frame = std::string(body);
  return r;
}

std::string to_jsonl(const AcarsRecord& r) {
  // Field order is fixed so the output is byte-stable.
  nlohmann::ordered_json j;
  j["ts"] = r.timestamp;
  j["link"] = std::string(to_string(r.link));
  if (r.frequency_mhz) j["freq"] = *r.frequency_mhz;
  if (r.direction != Direction::kUnknown) j["dir"] = std::string(to_string(r.direction));
  j["frame"] = r.raw_frame;
  if (r.capture_errors > 0) j["err"] = r.capture_errors;
  return j.dump();
}

LoadedCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  const std::string contents = read_file(path);
  const std::string name = path.filename().string();
  LoadedCorpus out;
  out.summary.path = path.string();

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < contents.size()) {
    auto end = contents.find('\n', start);
    if (end == std::string::npos) end = contents.size();
    std::string_view line(contents.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    ++out.summary.lines;

    std::string reason;
    std::string id = fmt::format("{}:{}", name, line_no);
    auto rec = format == CorpusFormat::kJsonl
                   ? parse_jsonl_line(line, std::move(id), &reason)
                   : parse_rawlog_line(line, std::move(id), &reason);
    if (!rec) {
      ++out.summary.skipped;
      if (out.summary.first_bad_line == 0) {
        out.summary.first_bad_line = line_no;
        out.summary.first_bad_reason = reason;
      }
      continue;
    }
    if (rec->out_of_scope_link()) ++out.summary.hf_records;
    if (rec->has_capture_errors()) ++out.summary.with_capture_errors;
    out.records.push_back(std::move(*rec));
  }
  out.summary.records = out.records.size();
  if (out.summary.skipped * 2 > out.summary.lines) {
    throw CorpusRejected(path.string(), out.summary.first_bad_line,
                         out.summary.first_bad_reason);
  }
  return out;
}

LoadedCorpus load_corpora(std::span<const CorpusSource> sources) {
  std::vector<LoadedCorpus> parts(sources.size());
  std::vector<std::exception_ptr> errors(sources.size());
  const auto n = static_cast<long>(sources.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      parts[i] = load_corpus(sources[i].path, sources[i].format);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  LoadedCorpus out;
  for (auto& p : parts) {
    out.summary.merge(p.summary);
    out.records.insert(out.records.end(), std::make_move_iterator(p.records.begin()),
                       std::make_move_iterator(p.records.end()));
  }
  if (sources.size() > 1) {
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const AcarsRecord& a, const AcarsRecord& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
  return out;
}

std::vector<AcarsRecord> dedupe(std::span<const AcarsRecord> records,
                                double window_s) {
  if (window_s < 0.0) throw std::invalid_argument("dedup window must be >= 0");
  std::unordered_map<std::string, std::vector<double>> kept_times;
  std::vector<AcarsRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    std::string key;
    const auto parsed = frame::parse_frame(std::string_view(r.raw_frame));
    if (const auto* m = std::get_if<frame::AcarsMessage>(&parsed)) {
      key = fmt::format("M|{}|{}|{}|{:016x}", m->registration, m->label,
                        m->msg_no.value_or(""), fnv1a64(m->text));
    } else {
      key = fmt::format("R|{:016x}|{}", fnv1a64(r.raw_frame), r.raw_frame.size());
    }
    auto& times = kept_times[key];
    const bool duplicate = std::any_of(times.begin(), times.end(), [&](double t) {
      return std::abs(r.timestamp - t) <= window_s;
    });
    if (duplicate) continue;
    times.push_back(r.timestamp);
    out.push_back(r);
  }
  return out;
}

std::map<Link, std::vector<AcarsRecord>> partition_by_link(
    std::span<const AcarsRecord> records) {
  std::map<Link, std::vector<AcarsRecord>> out;
  for (const auto& r : records) out[r.link].push_back(r);
  return out;
}

}  // namespace acars_audit::ingest
