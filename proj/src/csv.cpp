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

#include "acars_audit/csv.hpp"

#include <fmt/format.h>

#include "acars_audit/errors.hpp"
#include "acars_audit/text.hpp"

namespace acars_audit {

std::optional<std::vector<std::string>> parse_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path,
                             const std::vector<std::string>& expected_header) {
  const std::string contents = read_file(path);
  std::vector<CsvRow> rows;
  bool header_seen = expected_header.empty();
  std::size_t line_no = 0;
  for (const auto& raw : split(contents, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = parse_csv_line(line);
    if (!fields) throw SchemaError(path.string(), line_no, "unterminated quote");
    for (auto& f : *fields) f = std::string(trim(f));
    if (!header_seen) {
      if (*fields != expected_header) {
        std::string want;
        for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
        throw SchemaError(path.string(), line_no,
                          fmt::format("expected header '{}'", want));
      }
      header_seen = true;
      continue;
    }
    if (!expected_header.empty() && fields->size() != expected_header.size()) {
      throw SchemaError(path.string(), line_no,
                        fmt::format("expected {} fields, got {}",
                                    expected_header.size(), fields->size()));
    }
    rows.push_back(CsvRow{line_no, std::move(*fields)});
  }
  if (!header_seen) throw SchemaError(path.string(), 0, "missing header");
  return rows;
}

}  // namespace acars_audit
