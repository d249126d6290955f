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

// UTF-8 string helpers: decoding, case and diacritic folding for Latin scripts,
// splitting and joining.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace morphotrans::text {

/// Decodes UTF-8 into code points. Invalid bytes are passed through as U+FFFD.
inline std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (c < 0x80) {
      cp = c;
      len = 1;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      len = 3;
    } else if ((c >> 3) == 0x1E) {
      cp = c & 0x07;
      len = 4;
    } else {
      out.push_back(U'\uFFFD');
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(U'\uFFFD');
      break;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(U'\uFFFD');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

inline char32_t lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  // Latin-1 supplement, minus the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A: mostly upper/lower pairs at even/odd offsets.
  if (cp >= 0x100 && cp <= 0x137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && cp % 2 == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if ((cp == 0x179 || cp == 0x17B || cp == 0x17D)) return cp + 1;
  return cp;
}

/// Maps a lowercase Latin letter with diacritics to its base letters.
inline std::u32string_view base_letters(char32_t cp) {
  switch (cp) {
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
    case 0x101: case 0x103: case 0x105:
      return U"a";
    case 0xE6: return U"ae";
    case 0xE7: case 0x107: case 0x109: case 0x10B: case 0x10D:
      return U"c";
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
    case 0x113: case 0x115: case 0x117: case 0x119: case 0x11B:
      return U"e";
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
    case 0x129: case 0x12B: case 0x12D: case 0x12F: case 0x131:
      return U"i";
    case 0xF1: case 0x144: case 0x146: case 0x148:
      return U"n";
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
    case 0x14D: case 0x14F: case 0x151:
      return U"o";
    case 0x153: return U"oe";
    case 0xF9: case 0xFA: case 0xFB: case 0xFC:
    case 0x169: case 0x16B: case 0x16D: case 0x16F: case 0x171: case 0x173:
      return U"u";
    case 0xFD: case 0xFF: return U"y";
    case 0xDF: return U"ss";
    case 0x15B: case 0x15D: case 0x15F: case 0x161: return U"s";
    case 0x17A: case 0x17C: case 0x17E: return U"z";
    case 0x142: return U"l";
    default: return {};
  }
}

inline std::string to_lower(std::string_view s) {
  bool ascii = true;
  for (char c : s) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    std::string out(s);
    for (char& c : out)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    return out;
  }
  auto cps = decode(s);
  for (auto& cp : cps) cp = lower(cp);
  return encode(cps);
}

/// Lowercases and strips diacritics ("Ménopause" -> "menopause").
inline std::u32string fold_codepoints(std::string_view s) {
  std::u32string out;
  for (char32_t cp : decode(s)) {
    cp = lower(cp);
    auto base = base_letters(cp);
    if (base.empty())
      out.push_back(cp);
    else
      out.append(base);
  }
  return out;
}

inline std::string fold(std::string_view s) { return encode(fold_codepoints(s)); }

/// Number of code points.
inline std::size_t length(std::string_view s) { return decode(s).size(); }

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

/// Splits on runs of ASCII whitespace, dropping empty fields.
inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\n' || s[j] == '\r')) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

template <typename Range>
std::string join(const Range& parts, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out.append(sep);
    out.append(p);
    first = false;
  }
  return out;
}

/// Folded form with internal whitespace runs collapsed to single spaces.
inline std::string fold_phrase(std::string_view s) { return join(split_ws(fold(s)), " "); }

/// 64-bit FNV-1a. Stable across platforms; used to derive per-list seeds.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace morphotrans::text
