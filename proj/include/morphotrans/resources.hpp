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

// Linguistic resources: bilingual dictionaries, the morpheme translation table,
// synonym and morphological-family variation sets, cognate mining, and the POS
// transition model estimated from a phrase translation table.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "morphotrans/corpus.hpp"
#include "morphotrans/errors.hpp"
#include "morphotrans/morpheme.hpp"
#include "morphotrans/porter.hpp"
#include "morphotrans/text.hpp"

namespace morphotrans {

/// Which file a bilingual row came from. Decides its default origin class.
enum class ResourceRole { general_dictionary, domain_dictionary, cognate_dictionary, morpheme_table };

inline std::string_view to_string(ResourceRole r) {
  switch (r) {
    case ResourceRole::general_dictionary: return "general_dictionary";
    case ResourceRole::domain_dictionary: return "domain_dictionary";
    case ResourceRole::cognate_dictionary: return "cognate_dictionary";
    case ResourceRole::morpheme_table: return "morpheme_table";
  }
  return "general_dictionary";
}

enum class Side { source = 0, target = 1 };

/// One row of a bilingual TSV resource.
struct BilingualRow {
  Morpheme source;
  std::string target;
  MorphemeKind target_kind = MorphemeKind::lexical;
  std::optional<int> tag;  // explicit origin class, overrides the role default
  ResourceRole role = ResourceRole::general_dictionary;

  friend bool operator==(const BilingualRow& a, const BilingualRow& b) {
    return a.source == b.source && a.target == b.target && a.target_kind == b.target_kind && a.tag == b.tag &&
           a.role == b.role;
  }

  /// Origin class for a direct lookup through this row.
  int origin_class() const {
    if (tag) return *tag;
    if (is_bound(target_kind)) return bound_class(target_kind);
    if (is_bound(source.kind)) return kBoundMorphemeTranslation;
    return role == ResourceRole::cognate_dictionary ? kCognate : kGeneralDictionary;
  }
};

/// A source item with all of its targets, as reported for a resource.
struct BilingualEntry {
  Morpheme source;
  std::vector<std::pair<std::string, MorphemeKind>> targets;
  int resource_tag = kGeneralDictionary;
};

struct VariationSet {
  Lemma lemma;
  std::set<Lemma> synonyms;
  std::set<Lemma> morphological_family;
  std::string language;
};

struct PhraseAlignment {
  std::string lem_s;
  std::vector<std::string> pos_s;
  std::string lem_t;
  std::vector<std::string> pos_t;
  double p_s_given_t = 0.0;
  double p_t_given_s = 0.0;
};

/// POS sequences are keyed by their tags joined with a single space.
inline std::string pos_key(std::span<const std::string> tags) { return text::join(tags, " "); }

/// P(y|x) over POS patterns.
struct PosTransitionModel {
  std::map<std::string, std::map<std::string, double>> table;

  bool has_source(const std::string& x) const { return table.count(x) > 0; }

  double probability(const std::string& x, const std::string& y) const {
    auto it = table.find(x);
    if (it == table.end()) return 0.0;
    auto jt = it->second.find(y);
    return jt == it->second.end() ? 0.0 : jt->second;
  }
};

/// P(y|x) = sum of p(t|s) over alignments with pos_s = x and pos_t = y, divided by
/// the sum of p(t|s) over alignments with pos_s = x.
inline PosTransitionModel build_pos_model(std::span<const PhraseAlignment> phrase_table,
                                          std::vector<std::string>* warnings = nullptr) {
  if (phrase_table.empty()) throw ConfigError("phrase table is empty");
  std::map<std::string, std::map<std::string, double>> numer;
  std::map<std::string, double> denom;
  for (const auto& a : phrase_table) {
    auto x = pos_key(a.pos_s);
    auto y = pos_key(a.pos_t);
    numer[x][y] += a.p_t_given_s;
    denom[x] += a.p_t_given_s;
  }
  PosTransitionModel model;
  for (const auto& [x, row] : numer) {
    double d = denom[x];
    if (d <= 0.0) {
      if (warnings) warnings->push_back("POS pattern '" + x + "' has zero total p(t|s); omitted");
      continue;
    }
    auto& out = model.table[x];
    for (const auto& [y, n] : row)
      if (n > 0.0) out[y] = n / d;
  }
  return model;
}

/// Source-language decomposition inventories.
struct Inventories {
  std::set<std::string> prefixes;
  std::set<std::string> confixes;
  std::set<std::string> suffixes;
  std::set<std::string> lexical;
};

/// Entry count of one resource: distinct source items and total source->target rows.
struct ResourceCount {
  std::size_t sources = 0;
  std::size_t targets = 0;
  friend bool operator==(const ResourceCount&, const ResourceCount&) = default;
};

class ResourceBank {
 public:
  ResourceBank() = default;
  ResourceBank(std::string source_language, std::string target_language)
      : source_language_(std::move(source_language)), target_language_(std::move(target_language)) {}

  const std::string& source_language() const { return source_language_; }
  const std::string& target_language() const { return target_language_; }

  /// Adds a bilingual row. Exact duplicates are dropped with a warning.
  void add_row(BilingualRow row) {
    row.source.language = source_language_;
    auto& bucket = rows_[row.source.form];
    for (const auto& existing : bucket) {
      if (existing == row) {
        warnings_.push_back("duplicate entry in " + std::string(to_string(row.role)) + ": " +
                            row.source.notation() + " -> " + row.target);
        return;
      }
    }
    if (row.source.kind == MorphemeKind::lexical) {
      if (row.role == ResourceRole::general_dictionary || row.role == ResourceRole::domain_dictionary)
        inventories_.lexical.insert(row.source.form);
    } else if (row.role == ResourceRole::morpheme_table) {
      switch (row.source.kind) {
        case MorphemeKind::prefix: inventories_.prefixes.insert(row.source.form); break;
        case MorphemeKind::confix: inventories_.confixes.insert(row.source.form); break;
        case MorphemeKind::suffix: inventories_.suffixes.insert(row.source.form); break;
        case MorphemeKind::lexical: break;
      }
    }
    bucket.push_back(std::move(row));
  }

  void add_row(ResourceRole role, std::string_view source, MorphemeKind source_kind, std::string_view target,
               MorphemeKind target_kind, std::optional<int> tag = std::nullopt) {
    BilingualRow row;
    row.source = Morpheme(source, source_kind, source_language_);
    row.target = canonical_form(target);
    row.target_kind = target_kind;
    row.tag = tag;
    row.role = role;
    add_row(std::move(row));
  }

  /// Extra lexical items for decomposition (e.g. a monolingual word list).
  void add_lexical(std::string_view form) { inventories_.lexical.insert(canonical_form(form)); }

  /// Symmetric synonymy between two lemmas of one language.
  void add_synonym(Side side, std::string_view a, std::string_view b) {
    auto x = text::to_lower(a);
    auto y = text::to_lower(b);
    if (x == y) return;
    auto& syn = synonyms_[index(side)];
    syn[x].insert(y);
    syn[y].insert(x);
  }

  /// Merges a morphological family: every member becomes related to every other.
  void add_family(Side side, std::span<const Lemma> members) {
    std::set<Lemma> all;
    for (const auto& m : members) all.insert(text::to_lower(m));
    if (all.size() < 2) return;
    auto& fam = families_[index(side)];
    for (const auto& m : all)
      for (const auto& o : all)
        if (m != o) fam[m].insert(o);
  }

  void set_pos_model(PosTransitionModel model) { pos_model_ = std::move(model); }
  const PosTransitionModel& pos_model() const { return pos_model_; }

  const Inventories& inventories() const { return inventories_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  VariationSet variation_set(Side side, const Lemma& lemma) const {
    VariationSet v;
    v.lemma = text::to_lower(lemma);
    v.language = side == Side::source ? source_language_ : target_language_;
    if (auto it = synonyms_[index(side)].find(v.lemma); it != synonyms_[index(side)].end()) v.synonyms = it->second;
    if (auto it = families_[index(side)].find(v.lemma); it != families_[index(side)].end())
      v.morphological_family = it->second;
    return v;
  }

  /// Direct translations of one item: rows keyed by its form, lexical items only
  /// through lexical-source rows and bound items only through bound-source rows.
  std::vector<ComponentTranslation> direct_translations(const Morpheme& m) const {
    std::vector<ComponentTranslation> out;
    auto it = rows_.find(m.form);
    if (it == rows_.end()) return out;
    for (const auto& row : it->second) {
      if (is_bound(row.source.kind) != is_bound(m.kind)) continue;
      out.push_back({row.target, row.target_kind, row.origin_class()});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Trans(e) ∪ Trans(Var_src(e)) ∪ Var_tgt(Trans(e)), variants taken one level deep.
  /// When the same (form, kind) is reachable along several paths, the direct path wins,
  /// then the source-variant path, then the target-variant path.
  std::vector<ComponentTranslation> translate_component(const Morpheme& component) const {
    std::map<std::pair<std::string, MorphemeKind>, int> chosen;
    auto offer = [&](const ComponentTranslation& t) { chosen.try_emplace({t.form, t.kind}, t.origin_class); };

    auto direct = direct_translations(component);
    for (const auto& t : direct) offer(t);

    if (component.kind == MorphemeKind::lexical) {
      auto variants = variation_set(Side::source, component.form);
      for (const auto& group : {std::pair{&variants.synonyms, int(kLexicalVariant)},
                                std::pair{&variants.morphological_family, int(kMorphologicalVariant)}}) {
        std::vector<ComponentTranslation> found;
        for (const auto& v : *group.first) {
          for (auto t : direct_translations(Morpheme(v, MorphemeKind::lexical))) {
            if (!is_bound(t.kind)) t.origin_class = group.second;
            found.push_back(t);
          }
        }
        std::sort(found.begin(), found.end());
        for (const auto& t : found) offer(t);
      }
    }

    std::vector<ComponentTranslation> target_variants;
    for (const auto& t : direct) {
      if (is_bound(t.kind)) continue;
      auto variants = variation_set(Side::target, t.form);
      for (const auto& s : variants.synonyms) target_variants.push_back({s, MorphemeKind::lexical, kLexicalVariant});
      for (const auto& f : variants.morphological_family)
        target_variants.push_back({f, MorphemeKind::lexical, kMorphologicalVariant});
    }
    std::sort(target_variants.begin(), target_variants.end());
    for (const auto& t : target_variants) offer(t);

    std::vector<ComponentTranslation> out;
    out.reserve(chosen.size());
    for (const auto& [key, cls] : chosen) out.push_back({key.first, key.second, cls});
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Lexical translations from the general-language and domain dictionaries.
  std::vector<std::string> dictionary_translations(const Lemma& lemma) const {
    std::set<std::string> out;
    auto it = rows_.find(text::to_lower(lemma));
    if (it == rows_.end()) return {};
    for (const auto& row : it->second) {
      if (row.source.kind != MorphemeKind::lexical || row.target_kind != MorphemeKind::lexical) continue;
      if (row.role == ResourceRole::general_dictionary || row.role == ResourceRole::domain_dictionary)
        out.insert(row.target);
    }
    return {out.begin(), out.end()};
  }

  /// Grouped entries of one role, sorted by source.
  std::vector<BilingualEntry> entries(ResourceRole role) const {
    std::map<std::pair<Morpheme, int>, BilingualEntry> grouped;
    for (const auto& [_, bucket] : rows_) {
      for (const auto& row : bucket) {
        if (row.role != role) continue;
        auto& e = grouped[{row.source, row.origin_class()}];
        e.source = row.source;
        e.resource_tag = row.origin_class();
        e.targets.emplace_back(row.target, row.target_kind);
      }
    }
    std::vector<BilingualEntry> out;
    for (auto& [_, e] : grouped) {
      std::sort(e.targets.begin(), e.targets.end());
      out.push_back(std::move(e));
    }
    return out;
  }

  /// Distinct sources and total rows for each bilingual role, plus variation resources.
  std::map<std::string, ResourceCount> counts() const {
    std::map<std::string, ResourceCount> out;
    for (auto role : {ResourceRole::general_dictionary, ResourceRole::domain_dictionary,
                      ResourceRole::cognate_dictionary, ResourceRole::morpheme_table}) {
      ResourceCount c;
      std::set<Morpheme> sources;
      for (const auto& [_, bucket] : rows_) {
        for (const auto& row : bucket) {
          if (row.role != role) continue;
          sources.insert(row.source);
          ++c.targets;
        }
      }
      c.sources = sources.size();
      out[std::string(to_string(role))] = c;
    }
    auto relation_count = [](const std::map<Lemma, std::set<Lemma>>& rel) {
      ResourceCount c;
      c.sources = rel.size();
      for (const auto& [_, s] : rel) c.targets += s.size();
      return c;
    };
    out["source_synonyms"] = relation_count(synonyms_[0]);
    out["target_synonyms"] = relation_count(synonyms_[1]);
    out["source_families"] = relation_count(families_[0]);
    out["target_families"] = relation_count(families_[1]);
    return out;
  }

  /// Source lemmas of the general and domain dictionaries.
  std::set<Lemma> dictionary_sources() const {
    std::set<Lemma> out;
    for (const auto& [form, bucket] : rows_)
      for (const auto& row : bucket)
        if (row.source.kind == MorphemeKind::lexical && row.role != ResourceRole::cognate_dictionary &&
            row.role != ResourceRole::morpheme_table)
          out.insert(form);
    return out;
  }

  /// Target lemmas of the general and domain dictionaries.
  std::set<Lemma> dictionary_targets() const {
    std::set<Lemma> out;
    for (const auto& [_, bucket] : rows_)
      for (const auto& row : bucket)
        if (row.source.kind == MorphemeKind::lexical && row.target_kind == MorphemeKind::lexical &&
            row.role != ResourceRole::cognate_dictionary && row.role != ResourceRole::morpheme_table)
          out.insert(row.target);
    return out;
  }

  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  static std::size_t index(Side s) { return static_cast<std::size_t>(s); }

  std::string source_language_;
  std::string target_language_;
  std::map<std::string, std::vector<BilingualRow>> rows_;
  Inventories inventories_;
  std::map<Lemma, std::set<Lemma>> synonyms_[2];
  std::map<Lemma, std::set<Lemma>> families_[2];
  PosTransitionModel pos_model_;
  std::vector<std::string> warnings_;
};

// ---------------------------------------------------------------------------
// File formats

inline std::optional<int> parse_origin_tag(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  static const std::map<std::string, int, std::less<>> names = {
      {"general", kGeneralDictionary},      {"dictionary", kGeneralDictionary},
      {"domain", kGeneralDictionary},       {"cognate", kCognate},
      {"lexical_variant", kLexicalVariant}, {"morphological_variant", kMorphologicalVariant},
      {"bound", kBoundMorphemeTranslation}, {"prefix", kPrefix},
      {"confix", kConfix},                  {"suffix", kSuffix}};
  if (auto it = names.find(s); it != names.end()) return it->second;
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '8') return s[0] - '0';
  throw ParseError("unknown resource tag: " + std::string(s));
}

/// `source<TAB>target<TAB>kind_source<TAB>kind_target[<TAB>tag]`
inline void read_bilingual_tsv(std::istream& in, const std::string& name, ResourceRole role, ResourceBank& bank) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f.size() != 4 && f.size() != 5)
      throw ParseError(name, lineno, "expected 4 or 5 tab-separated columns, got " + std::to_string(f.size()));
    try {
      auto sk = parse_kind(text::trim(f[2]));
      auto tk = parse_kind(text::trim(f[3]));
      auto tag = f.size() == 5 ? parse_origin_tag(f[4]) : std::nullopt;
      if (canonical_form(f[0]).empty() || canonical_form(f[1]).empty())
        throw ParseError("empty source or target");
      bank.add_row(role, f[0], sk, f[1], tk, tag);
    } catch (const ParseError& e) {
      throw ParseError(name, lineno, e.what());
    }
  }
}

/// Synonym file in the dictionary TSV layout; source and target are same-language lemmas.
inline void read_synonym_tsv(std::istream& in, const std::string& name, Side side, ResourceBank& bank) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f.size() < 2 || f.size() > 5)
      throw ParseError(name, lineno, "expected 2 to 5 tab-separated columns, got " + std::to_string(f.size()));
    bank.add_synonym(side, text::trim(f[0]), text::trim(f[1]));
  }
}

/// One family per line, members separated by tabs.
inline void read_family_file(std::istream& in, Side side, ResourceBank& bank) {
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto members = text::split_ws(line);
    bank.add_family(side, members);
  }
}

/// `lem_s<TAB>pos_s<TAB>lem_t<TAB>pos_t<TAB>p_s_given_t<TAB>p_t_given_s`; POS sequences space-separated.
inline std::vector<PhraseAlignment> read_phrase_table(std::istream& in, const std::string& name) {
  std::vector<PhraseAlignment> out;
  std::string line;
  std::size_t lineno = 0;
  auto prob = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParseError(name, lineno, "not a number: " + s);
    }
    if (used != text::trim(s).size() || !(v >= 0.0 && v <= 1.0))
      throw ParseError(name, lineno, "probability outside [0,1]: " + s);
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f.size() != 6) throw ParseError(name, lineno, "expected 6 tab-separated columns, got " + std::to_string(f.size()));
    PhraseAlignment a;
    a.lem_s = f[0];
    a.pos_s = text::split_ws(f[1]);
    a.lem_t = f[2];
    a.pos_t = text::split_ws(f[3]);
    if (a.pos_s.empty() || a.pos_t.empty()) throw ParseError(name, lineno, "empty POS sequence");
    a.p_s_given_t = prob(f[4]);
    a.p_t_given_s = prob(f[5]);
    out.push_back(std::move(a));
  }
  return out;
}

inline void write_bilingual_tsv(std::ostream& out, std::span<const BilingualEntry> entries) {
  for (const auto& e : entries)
    for (const auto& [target, kind] : e.targets)
      out << e.source.form << '\t' << target << '\t' << to_string(e.source.kind) << '\t' << to_string(kind) << '\t'
          << e.resource_tag << '\n';
}

// ---------------------------------------------------------------------------
// Cognates

/// Longest common subsequence length over code points.
inline std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// LCS length over the longer length, on diacritic-folded lowercase strings.
inline double cognate_similarity(std::string_view a, std::string_view b) {
  auto fa = text::fold_codepoints(a);
  auto fb = text::fold_codepoints(b);
  auto longest = std::max(fa.size(), fb.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(lcs_length(fa, fb)) / static_cast<double>(longest);
}

inline constexpr double kDefaultCognateThreshold = 0.8;

/// Pairs of non-stopword lemmas whose cognate similarity reaches the threshold.
inline std::vector<BilingualEntry> mine_cognates(const AnnotatedCorpus& src, const AnnotatedCorpus& tgt,
                                                 double threshold = kDefaultCognateThreshold) {
  struct Word {
    Lemma lemma;
    std::u32string folded;
  };
  auto words_of = [](const AnnotatedCorpus& c) {
    std::vector<Word> out;
    for (const auto& l : c.vocabulary())
      if (!c.is_stopword(l)) out.push_back({l, text::fold_codepoints(l)});
    return out;
  };
  auto sw = words_of(src);
  auto tw = words_of(tgt);
  std::vector<BilingualEntry> out;
  for (const auto& s : sw) {
    BilingualEntry e;
    e.source = Morpheme(s.lemma, MorphemeKind::lexical, src.language());
    e.resource_tag = kCognate;
    for (const auto& t : tw) {
      auto longest = std::max(s.folded.size(), t.folded.size());
      auto shortest = std::min(s.folded.size(), t.folded.size());
      if (longest == 0) continue;
      // LCS cannot exceed the shorter length.
      if (static_cast<double>(shortest) / static_cast<double>(longest) < threshold) continue;
      double sim = static_cast<double>(lcs_length(s.folded, t.folded)) / static_cast<double>(longest);
      if (sim >= threshold) e.targets.emplace_back(t.lemma, MorphemeKind::lexical);
    }
    if (!e.targets.empty()) out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphological families

/// Longest-suffix stripping for languages without a Porter stemmer. A suffix is
/// removed only if at least `min_stem` code points remain.
struct SuffixStripTable {
  std::vector<std::string> suffixes;
  std::size_t min_stem = 3;

  std::string strip_once(const std::string& word) const {
    auto cps = text::decode(word);
    std::size_t best = 0;
    for (const auto& s : suffixes) {
      auto scp = text::decode(s);
      if (scp.size() <= best || scp.size() + min_stem > cps.size()) continue;
      if (std::equal(scp.rbegin(), scp.rend(), cps.rbegin())) best = scp.size();
    }
    if (best == 0) return word;
    return text::encode(std::u32string_view(cps).substr(0, cps.size() - best));
  }

  static SuffixStripTable read(std::istream& in) {
    SuffixStripTable t;
    std::string line;
    while (std::getline(in, line)) {
      auto s = text::trim(line);
      if (s.empty() || s.front() == '#') continue;
      t.suffixes.push_back(text::to_lower(s));
    }
    return t;
  }
};

/// Family key: the stemmer applied until it reaches a fixed point. Porter's
/// algorithm is not idempotent on its own output ("agreed" -> "agre" -> "agr").
class FamilyStemmer {
 public:
  FamilyStemmer(const std::string& language, std::optional<SuffixStripTable> table) : table_(std::move(table)) {
    porter_ = language == "en";
    if (!porter_ && (!table_ || table_->suffixes.empty()))
      throw ConfigError("no stemmer for language '" + language + "': configure a suffix-strip table");
  }

  std::string operator()(const std::string& word) const {
    std::string cur = word;
    for (int i = 0; i < 16; ++i) {
      std::string next = porter_ && !table_ ? porter_stem(cur) : table_->strip_once(cur);
      if (next == cur) break;
      cur = std::move(next);
    }
    return cur;
  }

 private:
  bool porter_ = false;
  std::optional<SuffixStripTable> table_;
};

struct MorphologicalFamily {
  std::string stem;
  std::vector<Lemma> members;  // sorted
};

/// Groups corpus lemmas and dictionary lemmas by stem; singletons are dropped.
/// Stopwords and lemmas without a letter are not stemmed.
inline std::vector<MorphologicalFamily> build_family_sets(const AnnotatedCorpus& corpus,
                                                          const std::set<Lemma>& dictionary_lemmas,
                                                          std::optional<SuffixStripTable> table = std::nullopt) {
  FamilyStemmer stem(corpus.language(), std::move(table));
  auto wordlike = [](const std::string& w) {
    return std::any_of(w.begin(), w.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || static_cast<unsigned char>(c) >= 0x80;
    });
  };
  std::set<Lemma> words;
  for (const auto& l : corpus.vocabulary())
    if (!corpus.is_stopword(l) && wordlike(l)) words.insert(l);
  for (const auto& l : dictionary_lemmas) {
    auto low = text::to_lower(l);
    if (wordlike(low) && !corpus.is_stopword(low)) words.insert(low);
  }
  std::map<std::string, std::vector<Lemma>> groups;
  for (const auto& w : words) groups[stem(w)].push_back(w);
  std::vector<MorphologicalFamily> out;
  for (auto& [s, members] : groups)
    if (members.size() > 1) out.push_back({s, std::move(members)});
  return out;
}

// ---------------------------------------------------------------------------
// Manifest

namespace detail {
inline std::vector<std::string> paths_of(const nlohmann::json& pair, const char* key) {
  std::vector<std::string> out;
  if (!pair.contains(key) || pair[key].is_null()) return out;
  const auto& v = pair[key];
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& p : v) {
      if (!p.is_string()) throw ConfigError(std::string("manifest: '") + key + "' must list file paths");
      out.push_back(p.get<std::string>());
    }
  } else {
    throw ConfigError(std::string("manifest: '") + key + "' must be a path or a list of paths");
  }
  return out;
}

inline std::ifstream open_resource(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open resource file: " + p.string());
  return in;
}
}  // namespace detail

/// Loads every resource listed for the given language pair in a JSON manifest:
///
///   {"pairs": [{"source": "en", "target": "fr",
///               "general_dictionary": [...], "domain_dictionary": [...],
///               "cognate_dictionary": [...], "morpheme_table": [...],
///               "source_synonyms": [...], "target_synonyms": [...],
///               "source_families": [...], "target_families": [...],
///               "lexicon": [...], "phrase_table": "..."}]}
///
/// Relative paths are resolved against the manifest's directory.
inline ResourceBank load_resources(const nlohmann::json& manifest, const std::filesystem::path& base_dir,
                                   const std::string& source_language, const std::string& target_language) {
  if (!manifest.contains("pairs") || !manifest["pairs"].is_array())
    throw ConfigError("manifest: missing 'pairs' array");
  const nlohmann::json* pair = nullptr;
  for (const auto& p : manifest["pairs"]) {
    if (p.value("source", "") == source_language && p.value("target", "") == target_language) {
      pair = &p;
      break;
    }
  }
  if (!pair) throw ConfigError("manifest: no entry for language pair " + source_language + "-" + target_language);

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  ResourceBank bank(source_language, target_language);
  const std::pair<const char*, ResourceRole> bilingual[] = {
      {"general_dictionary", ResourceRole::general_dictionary},
      {"domain_dictionary", ResourceRole::domain_dictionary},
      {"cognate_dictionary", ResourceRole::cognate_dictionary},
      {"morpheme_table", ResourceRole::morpheme_table}};
  for (const auto& [key, role] : bilingual) {
    for (const auto& p : detail::paths_of(*pair, key)) {
      auto path = resolve(p);
      auto in = detail::open_resource(path);
      read_bilingual_tsv(in, path.string(), role, bank);
    }
  }
  for (const auto& [key, side] : {std::pair{"source_synonyms", Side::source}, std::pair{"target_synonyms", Side::target}}) {
    for (const auto& p : detail::paths_of(*pair, key)) {
      auto path = resolve(p);
      auto in = detail::open_resource(path);
      read_synonym_tsv(in, path.string(), side, bank);
    }
  }
  for (const auto& [key, side] : {std::pair{"source_families", Side::source}, std::pair{"target_families", Side::target}}) {
    for (const auto& p : detail::paths_of(*pair, key)) {
      auto in = detail::open_resource(resolve(p));
      read_family_file(in, side, bank);
    }
  }
  for (const auto& p : detail::paths_of(*pair, "lexicon")) {
    auto in = detail::open_resource(resolve(p));
    std::string line;
    while (std::getline(in, line)) {
      auto w = text::trim(line);
      if (!w.empty() && w.front() != '#') bank.add_lexical(w);
    }
  }
  for (const auto& p : detail::paths_of(*pair, "phrase_table")) {
    auto path = resolve(p);
    auto in = detail::open_resource(path);
    auto table = read_phrase_table(in, path.string());
    std::vector<std::string> warnings;
    bank.set_pos_model(build_pos_model(table, &warnings));
    for (auto& w : warnings) bank.add_warning(std::move(w));
  }
  return bank;
}

inline ResourceBank load_resources(const std::filesystem::path& manifest_path, const std::string& source_language,
                                   const std::string& target_language) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open resource manifest: " + manifest_path.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(manifest_path.string() + ": " + e.what());
  }
  return load_resources(manifest, manifest_path.parent_path(), source_language, target_language);
}

}  // namespace morphotrans
