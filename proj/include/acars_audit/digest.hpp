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

#ifndef ACARS_AUDIT_DIGEST_HPP_
#define ACARS_AUDIT_DIGEST_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace acars_audit {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Lowercase hex HMAC-SHA-256 of `data` under `key`.
std::string hmac_sha256_hex(std::string_view key, std::string_view data);

/// 64-bit FNV-1a. Used for in-memory keys only, never for anything keyed.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace acars_audit

#endif  // ACARS_AUDIT_DIGEST_HPP_
