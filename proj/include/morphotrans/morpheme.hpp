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

#include <compare>
#include <string>
#include <string_view>

#include "morphotrans/errors.hpp"
#include "morphotrans/text.hpp"

namespace morphotrans {

enum class MorphemeKind { prefix, confix, suffix, lexical };

inline std::string_view to_string(MorphemeKind k) {
  switch (k) {
    case MorphemeKind::prefix: return "prefix";
    case MorphemeKind::confix: return "confix";
    case MorphemeKind::suffix: return "suffix";
    case MorphemeKind::lexical: return "lexical";
  }
  return "lexical";
}

inline MorphemeKind parse_kind(std::string_view s) {
  if (s == "prefix") return MorphemeKind::prefix;
  if (s == "confix") return MorphemeKind::confix;
  if (s == "suffix") return MorphemeKind::suffix;
  if (s == "lexical") return MorphemeKind::lexical;
  throw ParseError("unknown morpheme kind: " + std::string(s));
}

inline bool is_bound(MorphemeKind k) { return k != MorphemeKind::lexical; }

/// Canonical morpheme form: lowercase, hyphens removed.
inline std::string canonical_form(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '-') out.push_back(c);
  return text::to_lower(out);
}

struct Morpheme {
  std::string form;
  MorphemeKind kind = MorphemeKind::lexical;
  std::string language;

  Morpheme() = default;
  Morpheme(std::string_view f, MorphemeKind k, std::string lang = {})
      : form(canonical_form(f)), kind(k), language(std::move(lang)) {}

  /// Hyphen notation: `post-`, `-less`, `-cyto-`, `cancer`.
  std::string notation() const {
    switch (kind) {
      case MorphemeKind::prefix: return form + "-";
      case MorphemeKind::suffix: return "-" + form;
      case MorphemeKind::confix: return "-" + form + "-";
      case MorphemeKind::lexical: return form;
    }
    return form;
  }

  /// Inverse of notation(): the hyphen placement determines the kind.
  static Morpheme from_notation(std::string_view s, std::string lang = {}) {
    s = text::trim(s);
    if (s.empty() || s == "-" || s == "--") throw ParseError("empty morpheme notation");
    bool lead = s.front() == '-';
    bool trail = s.back() == '-';
    MorphemeKind k = lead && trail ? MorphemeKind::confix
                     : trail       ? MorphemeKind::prefix
                     : lead        ? MorphemeKind::suffix
                                   : MorphemeKind::lexical;
    return Morpheme(s, k, std::move(lang));
  }

  friend bool operator==(const Morpheme& a, const Morpheme& b) { return a.form == b.form && a.kind == b.kind; }
  friend auto operator<=>(const Morpheme& a, const Morpheme& b) {
    if (auto c = a.form <=> b.form; c != 0) return c;
    return a.kind <=> b.kind;
  }
};

/// Provenance of a translated component. Values are fixed: they index the
/// reliability profile used by the RESO score.
enum OriginClass : int {
  kGeneralDictionary = 1,
  kCognate = 2,
  kLexicalVariant = 3,
  kMorphologicalVariant = 4,
  kBoundMorphemeTranslation = 5,
  kPrefix = 6,
  kConfix = 7,
  kSuffix = 8,
};

inline constexpr int kOriginClassCount = 8;

inline bool valid_origin_class(int c) { return c >= 1 && c <= kOriginClassCount; }

/// Class of a bound target component, by its kind.
inline int bound_class(MorphemeKind k) {
  switch (k) {
    case MorphemeKind::prefix: return kPrefix;
    case MorphemeKind::confix: return kConfix;
    case MorphemeKind::suffix: return kSuffix;
    case MorphemeKind::lexical: break;
  }
  return kBoundMorphemeTranslation;
}

struct ComponentTranslation {
  std::string form;
  MorphemeKind kind = MorphemeKind::lexical;
  int origin_class = kGeneralDictionary;

  friend bool operator==(const ComponentTranslation&, const ComponentTranslation&) = default;
  friend auto operator<=>(const ComponentTranslation& a, const ComponentTranslation& b) {
    if (auto c = a.origin_class <=> b.origin_class; c != 0) return c;
    if (auto c = a.form <=> b.form; c != 0) return c;
    return a.kind <=> b.kind;
  }
};

}  // namespace morphotrans
