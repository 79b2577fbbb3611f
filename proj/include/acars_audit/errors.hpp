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

#ifndef ACARS_AUDIT_ERRORS_HPP_
#define ACARS_AUDIT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acars_audit {

/// Unreadable or unwritable file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A corpus where more than half of the non-blank lines failed to load.
class CorpusRejected : public std::runtime_error {
 public:
  CorpusRejected(const std::string& path, std::size_t first_bad_line,
                 const std::string& reason);

  const std::string& path() const { return path_; }
  std::size_t first_bad_line() const { return first_bad_line_; }

 private:
  std::string path_;
  std::size_t first_bad_line_;
};

/// A data file (registry, rules, label table, ...) that does not follow its
/// documented schema. The message always names file and line.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, std::size_t line,
              const std::string& reason);

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Invalid run configuration (missing key, bad threshold, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace acars_audit

#endif  // ACARS_AUDIT_ERRORS_HPP_
