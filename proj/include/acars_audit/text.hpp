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

#ifndef ACARS_AUDIT_TEXT_HPP_
#define ACARS_AUDIT_TEXT_HPP_

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace acars_audit {

std::string_view trim(std::string_view s);
std::string to_upper(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

bool is_digits(std::string_view s);
bool is_upper_alpha(std::string_view s);

/// A maximal run of [A-Za-z0-9] characters and its byte offset.
struct Token {
  std::string_view text;
  std::size_t begin = 0;
  std::size_t end() const { return begin + text.size(); }
};

/// Splits `s` into alphanumeric runs; everything else separates tokens.
std::vector<Token> alnum_tokens(std::string_view s);

/// Whole file contents. Throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Reads a one-entry-per-line list: blank lines and '#' comments are
/// skipped, entries are trimmed and uppercased.
std::set<std::string> read_word_list(const std::filesystem::path& path);

/// Same as read_word_list but keeps case and file order.
std::vector<std::string> read_lines_list(const std::filesystem::path& path);

}  // namespace acars_audit

#endif  // ACARS_AUDIT_TEXT_HPP_
