// Copyright 2026 The morphotrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Splitting of source terms into minimal morpheme components and enumeration
// of the adjacent groupings of a component list.

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphotrans/errors.hpp"
#include "morphotrans/morpheme.hpp"
#include "morphotrans/resources.hpp"
#include "morphotrans/text.hpp"

namespace morphotrans {

inline constexpr std::size_t kDefaultMinLexicalLength = 3;

struct Decomposition {
  std::string term;
  std::vector<Morpheme> components;

  friend bool operator==(const Decomposition& a, const Decomposition& b) { return a.components == b.components; }
  friend auto operator<=>(const Decomposition& a, const Decomposition& b) {
    return std::lexicographical_compare_three_way(a.components.begin(), a.components.end(), b.components.begin(),
                                                  b.components.end());
  }
};

struct Concatenation {
  std::vector<std::string> elements;
  friend auto operator<=>(const Concatenation&, const Concatenation&) = default;
};

/// Every way of grouping n adjacent items, as lists of group sizes. Bit i of the
/// mask set means "cut between item i and i+1". There are 2^(n-1) groupings.
inline std::vector<std::vector<std::size_t>> groupings(std::size_t n) {
  if (n == 0) throw Error("groupings: empty list");
  if (n > 63) throw LimitError("groupings: too many components");
  std::vector<std::vector<std::size_t>> out;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<std::size_t> sizes;
    std::size_t run = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        sizes.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    sizes.push_back(run);
    out.push_back(std::move(sizes));
  }
  return out;
}

/// All concatenations of adjacent components.
inline std::vector<Concatenation> concatenations(std::span<const std::string> components) {
  std::vector<Concatenation> out;
  for (const auto& sizes : groupings(components.size())) {
    Concatenation c;
    std::size_t at = 0;
    for (auto s : sizes) {
      std::string joined;
      for (std::size_t k = 0; k < s; ++k) joined += components[at + k];
      c.elements.push_back(std::move(joined));
      at += s;
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Component candidates for substring [i, j) of a hyphen-free segment of length n.
inline void kinds_for(const Inventories& inv, const std::string& sub, bool at_start, bool at_end, bool whole,
                      std::size_t min_lexical_len, std::vector<MorphemeKind>& out) {
  out.clear();
  if (at_start && inv.prefixes.count(sub)) out.push_back(MorphemeKind::prefix);
  if (inv.confixes.count(sub)) out.push_back(MorphemeKind::confix);
  if (at_end && inv.suffixes.count(sub)) out.push_back(MorphemeKind::suffix);
  if (inv.lexical.count(sub) && (whole || text::length(sub) >= min_lexical_len)) out.push_back(MorphemeKind::lexical);
}

// Maximal-count splittings of one hyphen-free segment (byte offsets).
inline std::vector<std::vector<Morpheme>> decompose_segment(const std::string& seg, const Inventories& inv,
                                                            std::size_t min_lexical_len, const std::string& lang) {
  const std::size_t n = seg.size();
  constexpr int kNone = -1;
  // best[i]: maximal number of components covering seg[i..n), kNone if impossible.
  std::vector<int> best(n + 1, kNone);
  best[n] = 0;
  std::vector<MorphemeKind> kinds;
  auto boundary = [&](std::size_t i) {
    // Never split inside a UTF-8 sequence.
    return i == 0 || i == n || (static_cast<unsigned char>(seg[i]) & 0xC0) != 0x80;
  };
  for (std::size_t i = n; i-- > 0;) {
    if (!boundary(i)) continue;
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (!boundary(j) || best[j] == kNone) continue;
      kinds_for(inv, seg.substr(i, j - i), i == 0, j == n, i == 0 && j == n, min_lexical_len, kinds);
      if (!kinds.empty()) best[i] = std::max(best[i], best[j] + 1);
    }
  }
  std::vector<std::vector<Morpheme>> out;
  if (best[0] == kNone) return out;
  std::vector<Morpheme> path;
  // Enumerate every path that keeps the maximal count.
  auto walk = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(path);
      return;
    }
    std::vector<MorphemeKind> ks;
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (!boundary(j) || best[j] == kNone || best[j] + 1 != best[i]) continue;
      auto sub = seg.substr(i, j - i);
      kinds_for(inv, sub, i == 0, j == n, i == 0 && j == n, min_lexical_len, ks);
      for (auto k : ks) {
        path.emplace_back(sub, k, lang);
        self(self, j);
        path.pop_back();
      }
    }
  };
  walk(walk, 0);
  return out;
}

}  // namespace detail

/// Splits a term into components drawn from the inventories, keeping only the
/// splittings with the most components. Hyphens force boundaries and each side is
/// decomposed on its own; prefixes must start a segment and suffixes end one.
/// Lexical components shorter than `min_lexical_len` are rejected unless they
/// span a whole segment. Returns an empty set when no split covers the term.
inline std::vector<Decomposition> decompose(std::string_view term, const Inventories& inventories,
                                            std::size_t min_lexical_len = kDefaultMinLexicalLength,
                                            const std::string& language = {}) {
  std::vector<Decomposition> out;
  auto lowered = text::to_lower(text::trim(term));
  if (lowered.empty()) throw Error("decompose: empty term");
  std::vector<std::string> segments;
  for (auto& s : text::split(lowered, '-'))
    if (!s.empty()) segments.push_back(std::move(s));
  if (segments.empty()) return out;

  std::vector<std::vector<Morpheme>> partial{{}};
  for (const auto& seg : segments) {
    auto splits = detail::decompose_segment(seg, inventories, min_lexical_len, language);
    if (splits.empty()) return out;
    std::vector<std::vector<Morpheme>> next;
    for (const auto& prefix : partial) {
      for (const auto& s : splits) {
        auto joined = prefix;
        joined.insert(joined.end(), s.begin(), s.end());
        next.push_back(std::move(joined));
      }
    }
    partial = std::move(next);
  }
  for (auto& comps : partial) out.push_back({std::string(text::trim(term)), std::move(comps)});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace morphotrans
