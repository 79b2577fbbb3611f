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

#include "acars_audit/cipher.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "acars_audit/text.hpp"

namespace acars_audit::cipher {
namespace {

constexpr std::string_view kLetters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
// Cost of using a cipher character somewhere its plaintext class forbids.
constexpr double kInfeasible = 1e6;

const std::array<int, 256>& index_table() {
  static const std::array<int, 256> table = [] {
    std::array<int, 256> t{};
    t.fill(-1);
    for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
      t[static_cast<unsigned char>(kAlphabet[i])] = static_cast<int>(i);
    }
    return t;
  }();
  return table;
}

std::string class_for_hint(char hint) {
  if (hint >= '0' && hint <= '9') {
    std::string s;
    for (char d = '0'; d <= hint; ++d) s.push_back(d);
    return s;
  }
  switch (hint) {
    case 'N': return "NS";
    case 'E': return "EW";
    case 'M': return "MP";
    case 'A': return std::string(kLetters);
    default: return std::string(kAlphabet);
  }
}

}  // namespace

int alphabet_index(char c) { return index_table()[static_cast<unsigned char>(c)]; }

Key Key::identity() {
  Key k;
  for (std::size_t i = 0; i < kAlphabetSize; ++i) k.fwd_[i] = k.inv_[i] = kAlphabet[i];
  return k;
}

Key Key::random(std::mt19937_64& rng) {
  std::array<char, kAlphabetSize> perm{};
  std::copy(kAlphabet.begin(), kAlphabet.end(), perm.begin());
  std::shuffle(perm.begin(), perm.end(), rng);
  Key k;
  k.fwd_ = perm;
  for (std::size_t i = 0; i < kAlphabetSize; ++i) {
    k.inv_[static_cast<std::size_t>(alphabet_index(perm[i]))] = kAlphabet[i];
  }
  return k;
}

char Key::encipher(char c) const {
  const int i = alphabet_index(c);
  return i < 0 ? c : fwd_[static_cast<std::size_t>(i)];
}

char Key::decipher(char c) const {
  const int i = alphabet_index(c);
  return i < 0 ? c : inv_[static_cast<std::size_t>(i)];
}

std::string Key::encipher(std::string_view plain) const {
  std::string out(plain);
  for (auto& c : out) c = encipher(c);
  return out;
}

std::string Key::decipher(std::string_view cipher) const {
  std::string out(cipher);
  for (auto& c : out) c = decipher(c);
  return out;
}

double index_of_coincidence(std::string_view text) {
  std::array<std::size_t, kAlphabetSize> counts{};
  std::size_t n = 0;
  for (char c : text) {
    const int i = alphabet_index(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (i < 0) continue;
    ++counts[static_cast<std::size_t>(i)];
    ++n;
  }
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (auto k : counts) sum += static_cast<double>(k) * static_cast<double>(k > 0 ? k - 1 : 0);
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double printable_ratio(std::string_view text) {
  if (text.empty()) return 0.0;
  const auto printable = std::count_if(text.begin(), text.end(), [](char c) {
    return c >= 0x20 && c <= 0x7E;
  });
  return static_cast<double>(printable) / static_cast<double>(text.size());
}

double transition_rate(std::string_view text) {
  auto cls = [](unsigned char c) { return std::isalpha(c) ? 0 : std::isdigit(c) ? 1 : 2; };
  std::size_t pairs = 0, switches = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    const auto a = static_cast<unsigned char>(text[i - 1]);
    const auto b = static_cast<unsigned char>(text[i]);
    if (std::isspace(a) || std::isspace(b)) continue;
    ++pairs;
    if (cls(a) != cls(b)) ++switches;
  }
  return pairs == 0 ? 0.0 : static_cast<double>(switches) / static_cast<double>(pairs);
}

CipherVerdict classify_encrypted(std::string_view text, bool has_content_hit,
                                 const CipherThresholds& t) {
  CipherVerdict v;
  v.index_of_coincidence = index_of_coincidence(text);
  v.printable_ratio = printable_ratio(text);
  v.transition_rate = transition_rate(text);
  v.is_encrypted = text.size() >= t.min_length && v.printable_ratio >= t.min_printable &&
                   !has_content_hit &&
                   (v.index_of_coincidence <= t.max_ioc || v.transition_rate >= t.min_transition);
  return v;
}

CribTemplate::CribTemplate(std::string literals, std::string mask)
    : literals_(std::move(literals)), mask_(std::move(mask)) {
  if (literals_.size() != mask_.size()) {
    throw std::invalid_argument(fmt::format("crib template lines differ in length ({} vs {})",
                                            literals_.size(), mask_.size()));
  }
  if (literals_.empty()) throw std::invalid_argument("crib template is empty");
  allowed_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (mask_[i] == 'V') {
      allowed_[i] = class_for_hint(literals_[i]);
    } else if (mask_[i] != 'L') {
      throw std::invalid_argument(
          fmt::format("crib mask column {} is '{}', expected L or V", i + 1, mask_[i]));
    }
  }
}

CribTemplate CribTemplate::parse(std::string_view contents) {
  std::vector<std::string> lines;
  for (auto& line : split(contents, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(std::move(line));
  }
  if (lines.size() != 2) {
    throw std::invalid_argument(
        fmt::format("crib template needs 2 lines (literals, mask), found {}", lines.size()));
  }
  return CribTemplate(lines[0], lines[1]);
}

CribTemplate CribTemplate::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

CribTemplate CribTemplate::load_default() {
  return load(std::filesystem::path(ACARS_AUDIT_DATA_DIR) / "crib_template.txt");
}

std::size_t CribTemplate::distinct_literals() const {
  std::set<char> seen;
  for (std::size_t i = 0; i < size(); ++i) {
    if (is_literal(i) && alphabet_index(literals_[i]) >= 0) seen.insert(literals_[i]);
  }
  return seen.size();
}

std::string CribTemplate::generate(std::mt19937_64& rng) const {
  std::string out = literals_;
  for (std::size_t i = 0; i < size(); ++i) {
    if (is_literal(i)) continue;
    const auto& cls = allowed_[i];
    std::uniform_int_distribution<std::size_t> pick(0, cls.size() - 1);
    out[i] = cls[pick(rng)];
  }
  return out;
}

char SubstitutionKey::decipher(char c) const {
  const int i = alphabet_index(c);
  return i < 0 ? c : mapping[static_cast<std::size_t>(i)];
}

std::string SubstitutionKey::decipher(std::string_view cipher) const {
  std::string out(cipher);
  for (auto& c : out) c = decipher(c);
  return out;
}

// Hungarian method with row/column potentials, O(n^3).
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

SubstitutionKey crack_with_crib(std::span<const std::string> ciphertexts,
                                const CribTemplate& tpl) {
  constexpr std::size_t n = kAlphabetSize;
  std::vector<std::size_t> aligned;
  for (std::size_t m = 0; m < ciphertexts.size(); ++m) {
    const auto& ct = ciphertexts[m];
    if (ct.size() != tpl.size()) continue;
    std::map<char, char> c2p, p2c;
    bool ok = true;
    for (std::size_t i = 0; i < ct.size() && ok; ++i) {
      const char c = ct[i];
      if (!tpl.is_literal(i)) {
        ok = alphabet_index(c) >= 0;
        continue;
      }
      const char p = tpl.literals()[i];
      if (alphabet_index(p) < 0) {
        ok = c == p;
        continue;
      }
      if (alphabet_index(c) < 0) {
        ok = false;
        continue;
      }
      const auto [ci, c_new] = c2p.emplace(c, p);
      const auto [pi, p_new] = p2c.emplace(p, c);
      ok = ci->second == p && pi->second == c;
    }
    if (ok) aligned.push_back(m);
  }
  if (aligned.empty()) {
    throw CrackError(CrackError::Kind::kNoAlignment,
                     fmt::format("no ciphertext matches the {}-character crib template shape",
                                 tpl.size()));
  }

  // Literal constraints, accumulated across messages.
  struct Pin {
    char other;
    std::size_t message;
  };
  std::map<char, Pin> c2p, p2c;
  for (std::size_t m : aligned) {
    const auto& ct = ciphertexts[m];
    for (std::size_t i = 0; i < ct.size(); ++i) {
      if (!tpl.is_literal(i)) continue;
      const char p = tpl.literals()[i];
      if (alphabet_index(p) < 0) continue;
      const char c = ct[i];
      const auto [ci, c_new] = c2p.emplace(c, Pin{p, m});
      if (!c_new && ci->second.other != p) {
        throw CrackError(CrackError::Kind::kInconsistent,
                         fmt::format("cipher '{}' decodes to '{}' in message {} but '{}' in "
                                     "message {}",
                                     c, ci->second.other, ci->second.message, p, m));
      }
      const auto [pi, p_new] = p2c.emplace(p, Pin{c, m});
      if (!p_new && pi->second.other != c) {
        throw CrackError(CrackError::Kind::kInconsistent,
                         fmt::format("plain '{}' encodes as '{}' in message {} but '{}' in "
                                     "message {}",
                                     p, pi->second.other, pi->second.message, c, m));
      }
    }
  }

  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (const auto& [c, pin] : c2p) {
    const auto row = static_cast<std::size_t>(alphabet_index(c));
    const auto col = static_cast<std::size_t>(alphabet_index(pin.other));
    for (std::size_t j = 0; j < n; ++j) cost[row][j] = j == col ? 0.0 : kInfeasible;
    for (std::size_t i = 0; i < n; ++i)
      if (i != row) cost[i][col] = kInfeasible;
  }
  // Negative log-likelihood of each variable-position observation.
  std::vector<double> log_size(tpl.size(), 0.0);
  std::vector<std::array<bool, n>> permits(tpl.size());
  for (std::size_t i = 0; i < tpl.size(); ++i) {
    if (tpl.is_literal(i)) continue;
    log_size[i] = std::log(static_cast<double>(tpl.allowed(i).size()));
    permits[i].fill(false);
    for (char p : tpl.allowed(i)) permits[i][static_cast<std::size_t>(alphabet_index(p))] = true;
  }
  for (std::size_t m : aligned) {
    const auto& ct = ciphertexts[m];
    for (std::size_t i = 0; i < ct.size(); ++i) {
      if (tpl.is_literal(i)) continue;
      const auto row = static_cast<std::size_t>(alphabet_index(ct[i]));
      if (c2p.contains(ct[i])) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (cost[row][j] >= kInfeasible) continue;
        cost[row][j] += permits[i][j] ? log_size[i] : kInfeasible;
      }
    }
  }

  const auto assignment = solve_assignment(cost);
  SubstitutionKey key;
  for (std::size_t r = 0; r < n; ++r) {
    key.mapping[r] = kAlphabet[static_cast<std::size_t>(assignment[r])];
  }
  for (const auto& [c, pin] : c2p) key.constrained.insert(c);
  key.coverage = static_cast<double>(key.constrained.size()) / static_cast<double>(n);
  key.aligned_messages = aligned.size();
  return key;
}

}  // namespace acars_audit::cipher
