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

#include "acars_audit/errors.hpp"

#include <fmt/format.h>

namespace acars_audit {

CorpusRejected::CorpusRejected(const std::string& path,
                               std::size_t first_bad_line,
                               const std::string& reason)
    : std::runtime_error(fmt::format(
          "{}: corpus rejected, more than half of the lines are malformed "
          "(first bad line {}: {})",
          path, first_bad_line, reason)),
      path_(path),
      first_bad_line_(first_bad_line) {}

SchemaError::SchemaError(const std::string& path, std::size_t line,
                         const std::string& reason)
    : std::runtime_error(fmt::format("{}:{}: {}", path, line, reason)),
      path_(path),
      line_(line) {}

}  // namespace acars_audit
