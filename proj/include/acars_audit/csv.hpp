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

#ifndef ACARS_AUDIT_CSV_HPP_
#define ACARS_AUDIT_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acars_audit {

/// Splits one RFC 4180 style line. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> parse_csv_line(std::string_view line);

/// Quotes a field when it contains a separator, quote or line break.
std::string csv_escape(std::string_view field);

struct CsvRow {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> fields;
};

/// Reads a CSV data file. Blank lines and lines starting with '#' are
/// skipped. When `expected_header` is non-empty the first data line must
/// match it exactly and every row must have the same field count; violations
/// throw SchemaError naming file and line.
std::vector<CsvRow> read_csv(const std::filesystem::path& path,
                             const std::vector<std::string>& expected_header);

}  // namespace acars_audit

#endif  // ACARS_AUDIT_CSV_HPP_
