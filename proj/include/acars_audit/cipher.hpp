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

// Weak-cipher screening and known-plaintext recovery of monoalphabetic
// substitution keys.
//
// Crib template file: two aligned lines after optional '#' comments. The
// first holds the plaintext, the second a mask of 'L' (literal) and 'V'
// (variable). Under a 'V' the plaintext character is a class hint:
//   digit k   any digit 0..k
//   N, E, M   hemisphere / sign pairs {N,S}, {E,W}, {M,P}
//   A         any letter
//   other     any alphabet character

#ifndef ACARS_AUDIT_CIPHER_HPP_
#define ACARS_AUDIT_CIPHER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acars_audit::cipher {

inline constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,-/:+()'?=";
inline constexpr std::size_t kAlphabetSize = 48;
static_assert(kAlphabet.size() == kAlphabetSize);
inline constexpr char kUnknown = '_';

/// Position of `c` in kAlphabet, or -1 for pass-through characters.
int alphabet_index(char c);

/// Full plaintext -> ciphertext bijection. Used to build ground truth.
class Key {
 public:
  static Key identity();
  static Key random(std::mt19937_64& rng);

  char encipher(char c) const;
  char decipher(char c) const;
  std::string encipher(std::string_view plain) const;
  std::string decipher(std::string_view cipher) const;

  bool operator==(const Key&) const = default;

 private:
  std::array<char, kAlphabetSize> fwd_{};
  std::array<char, kAlphabetSize> inv_{};
};

struct CipherThresholds {
  std::size_t min_length = 40;
  double min_printable = 0.9;
  double max_ioc = 0.03;
  double min_transition = 0.30;
};

struct CipherVerdict {
  bool is_encrypted = false;
  double index_of_coincidence = 0.0;
  double printable_ratio = 0.0;
  double transition_rate = 0.0;

  bool operator==(const CipherVerdict&) const = default;
};

double index_of_coincidence(std::string_view text);
double printable_ratio(std::string_view text);
/// Share of adjacent non-space pairs that switch between letter, digit and
/// punctuation. Plain text keeps these classes in runs; a substitution
/// scatters them.
double transition_rate(std::string_view text);

/// `has_content_hit` is whether any content detector fired on the text.
/// Encrypted means: long enough, printable, no hit, and either a flat
/// character distribution or letter/digit interleaving well above what
/// plain reports show.
CipherVerdict classify_encrypted(std::string_view text, bool has_content_hit,
                                 const CipherThresholds& t = {});

class CribTemplate {
 public:
  /// Throws std::invalid_argument on mismatched lines or a bad mask.
  CribTemplate(std::string literals, std::string mask);

  static CribTemplate parse(std::string_view contents);
  static CribTemplate load(const std::filesystem::path& path);
  static CribTemplate load_default();

  std::size_t size() const { return literals_.size(); }
  const std::string& literals() const { return literals_; }
  const std::string& mask() const { return mask_; }
  bool is_literal(std::size_t i) const { return mask_[i] == 'L'; }
  /// Plaintext characters allowed at variable position `i`.
  const std::string& allowed(std::size_t i) const { return allowed_[i]; }
  /// Distinct alphabet characters fixed by the literal positions.
  std::size_t distinct_literals() const;

  /// Random plaintext drawn uniformly from each position's class.
  std::string generate(std::mt19937_64& rng) const;

 private:
  std::string literals_;
  std::string mask_;
  std::vector<std::string> allowed_;
};

struct SubstitutionKey {
  /// Ciphertext alphabet index -> plaintext character.
  std::array<char, kAlphabetSize> mapping{};
  /// Ciphertext characters pinned by crib literals.
  std::set<char> constrained;
  double coverage = 0.0;  // constrained.size() / kAlphabetSize
  std::size_t aligned_messages = 0;

  char decipher(char c) const;
  std::string decipher(std::string_view cipher) const;
};

class CrackError : public std::runtime_error {
 public:
  enum class Kind { kNoAlignment, kInconsistent };
  CrackError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Aligns every ciphertext that fits the template shape, pins the literal
/// characters, then assigns the rest by maximum likelihood under the
/// template's per-position classes. Throws CrackError.
SubstitutionKey crack_with_crib(std::span<const std::string> ciphertexts,
                                const CribTemplate& tpl);

/// Minimum-cost perfect assignment on a square matrix; result[row] = column.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace acars_audit::cipher

#endif  // ACARS_AUDIT_CIPHER_HPP_
