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

// Compositional generation of candidate translations: every decomposition and
// concatenation of a source term is translated element by element, reordered,
// recomposed into target words and matched against the target corpus.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morphotrans/corpus.hpp"
#include "morphotrans/errors.hpp"
#include "morphotrans/morpheme.hpp"
#include "morphotrans/resources.hpp"
#include "morphotrans/segmenter.hpp"
#include "morphotrans/text.hpp"

namespace morphotrans {

struct GenerationLimits {
  std::size_t max_gap = 3;
  std::size_t max_permute = 4;
  std::size_t tuple_budget = 10000;
  std::size_t min_lexical_len = kDefaultMinLexicalLength;
};

/// Half-open token range [begin, end) of one corpus match.
struct MatchSpan {
  Position begin = 0;
  Position end = 0;
  friend auto operator<=>(const MatchSpan&, const MatchSpan&) = default;
};

struct CandidateTranslation {
  std::vector<std::pair<Lemma, std::string>> pairs;  // (lemma, POS) of every matched token
  std::vector<std::string> target_words;              // generated words before matching
  std::vector<ComponentTranslation> components;       // translated components, target order
  std::vector<int> component_provenance;              // origin class per component
  std::vector<MatchSpan> match_positions;             // sorted
  std::vector<std::string> surfaces;                  // distinct surfaces, earliest match first
  std::vector<Lemma> content_lemmas;                  // non-stopword lemmas of `pairs`
  std::string source_term;
  bool fertile = false;

  /// Identity of a candidate: its "lemma/POS" sequence.
  std::string key() const {
    std::vector<std::string> parts;
    for (const auto& [l, p] : pairs) parts.push_back(l + "/" + p);
    return text::join(parts, " ");
  }

  std::string pos_pattern() const {
    std::vector<std::string> tags;
    for (const auto& pr : pairs) tags.push_back(pr.second);
    return pos_key(tags);
  }

  std::size_t match_count() const { return match_positions.size(); }
};

/// Number of whitespace-separated words of a source term.
inline std::size_t source_word_count(std::string_view term) {
  return std::max<std::size_t>(1, text::split_ws(term).size());
}

/// All n! orderings of the elements, in lexicographic order of their indices.
template <typename T>
std::vector<std::vector<T>> permutations(std::span<const T> elements, std::size_t max_items = 4) {
  if (elements.size() > max_items)
    throw LimitError("permutations: " + std::to_string(elements.size()) + " items exceed the limit of " +
                     std::to_string(max_items));
  std::vector<std::size_t> idx(elements.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<T>> out;
  do {
    std::vector<T> order;
    order.reserve(idx.size());
    for (auto i : idx) order.push_back(elements[i]);
    out.push_back(std::move(order));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

inline std::vector<std::vector<std::string>> permutations(const std::vector<std::string>& elements,
                                                          std::size_t max_items = 4) {
  return permutations(std::span<const std::string>(elements), max_items);
}

/// Corpus matches of a target word sequence. Consecutive words must occur in order
/// within one sentence, separated only by stopword tokens, at most `max_gap` of them.
/// Matches sharing a (lemma, POS) sequence are one candidate.
inline std::vector<CandidateTranslation> match(std::span<const std::string> target_words,
                                               const AnnotatedCorpus& corpus, std::size_t max_gap = 3) {
  std::vector<Lemma> words;
  for (const auto& w : target_words) words.push_back(text::to_lower(w));
  if (words.empty()) return {};
  const auto& toks = corpus.tokens();

  std::set<MatchSpan> spans;
  auto extend = [&](auto&& self, Position start, Position at, std::size_t next) -> void {
    if (next == words.size()) {
      spans.insert({start, at + 1});
      return;
    }
    auto sentence_end = corpus.sentence_span(at).second;
    for (Position q = at + 1; q < sentence_end && q <= at + 1 + max_gap; ++q) {
      bool hit = toks[q].lemma == words[next];
      if (hit) self(self, start, q, next + 1);
      if (!corpus.is_stopword_at(q)) break;
    }
  };
  for (auto p : corpus.occurrences(words.front())) extend(extend, p, p, 1);

  std::map<std::vector<std::pair<Lemma, std::string>>, CandidateTranslation> by_key;
  for (const auto& span : spans) {
    std::vector<std::pair<Lemma, std::string>> pairs;
    std::vector<std::string> surface;
    for (auto q = span.begin; q < span.end; ++q) {
      pairs.emplace_back(toks[q].lemma, toks[q].pos);
      surface.push_back(toks[q].surface);
    }
    auto& cand = by_key[pairs];
    if (cand.pairs.empty()) {
      cand.pairs = pairs;
      cand.target_words = words;
      for (const auto& [l, _] : pairs)
        if (!corpus.is_stopword(l)) cand.content_lemmas.push_back(l);
    }
    cand.match_positions.push_back(span);
    auto s = text::join(surface, " ");
    if (std::find(cand.surfaces.begin(), cand.surfaces.end(), s) == cand.surfaces.end()) cand.surfaces.push_back(s);
  }
  std::vector<CandidateTranslation> out;
  for (auto& [_, c] : by_key) out.push_back(std::move(c));
  return out;
}

inline std::vector<CandidateTranslation> match(const std::vector<std::string>& target_words,
                                               const AnnotatedCorpus& corpus, std::size_t max_gap = 3) {
  return match(std::span<const std::string>(target_words), corpus, max_gap);
}

/// Surface of the earliest match, tokens separated by spaces.
inline std::string render_target_form(const CandidateTranslation& c) {
  if (c.surfaces.empty()) throw Error("render_target_form: candidate has no match");
  return c.surfaces.front();
}

/// Translations of one concatenated element. A single component is translated as
/// itself; a group of components is looked up both as a word and as a bound unit,
/// the word reading taking precedence on identical (form, kind).
inline std::vector<ComponentTranslation> translate_element(const ResourceBank& bank,
                                                           std::span<const Morpheme> group) {
  if (group.size() == 1) return bank.translate_component(group.front());
  std::string joined;
  for (const auto& m : group) joined += m.form;
  std::map<std::pair<std::string, MorphemeKind>, int> chosen;
  for (auto kind : {MorphemeKind::lexical, MorphemeKind::confix})
    for (const auto& t : bank.translate_component(Morpheme(joined, kind)))
      chosen.try_emplace({t.form, t.kind}, t.origin_class);
  std::vector<ComponentTranslation> out;
  for (const auto& [k, cls] : chosen) out.push_back({k.first, k.second, cls});
  std::sort(out.begin(), out.end());
  return out;
}

/// A recomposed target word and the components it was built from.
struct TargetWord {
  std::string form;
  std::size_t component_count = 0;
  bool all_bound = true;
};

/// Joins adjacent components into words: a bound morpheme fuses with its
/// neighbour, two lexical items stay separate words.
inline std::vector<TargetWord> recompose(std::span<const ComponentTranslation> ordered) {
  std::vector<TargetWord> words;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& t = ordered[i];
    bool fuse = i > 0 && (is_bound(ordered[i - 1].kind) || is_bound(t.kind));
    if (!fuse) words.push_back({});
    auto& w = words.back();
    w.form += t.form;
    ++w.component_count;
    w.all_bound = w.all_bound && is_bound(t.kind);
  }
  return words;
}

enum class GenerationStatus { ok, no_decomposition, component_untranslatable, no_corpus_match };

inline std::string_view to_string(GenerationStatus s) {
  switch (s) {
    case GenerationStatus::ok: return "ok";
    case GenerationStatus::no_decomposition: return "no decomposition";
    case GenerationStatus::component_untranslatable: return "component untranslatable";
    case GenerationStatus::no_corpus_match: return "no corpus match";
  }
  return "ok";
}

struct GenerationResult {
  std::string source_term;
  std::vector<Decomposition> decompositions;
  std::vector<CandidateTranslation> candidates;  // sorted by key
  GenerationStatus status = GenerationStatus::ok;
  bool truncated = false;            // tuple budget exhausted
  bool permutation_limited = false;  // some tuple exceeded max_permute; kept in source order
  std::size_t tuples = 0;
};

/// Generates the candidate translations of one source term.
inline GenerationResult generate(const std::string& source_term, const ResourceBank& bank,
                                 const AnnotatedCorpus& tgt_corpus, const GenerationLimits& limits = {}) {
  GenerationResult result;
  result.source_term = source_term;
  result.decompositions = decompose(source_term, bank.inventories(), limits.min_lexical_len, bank.source_language());
  if (result.decompositions.empty()) {
    result.status = GenerationStatus::no_decomposition;
    return result;
  }

  const auto source_words = source_word_count(source_term);
  std::map<std::string, CandidateTranslation> found;
  // Provenance rank of the path that produced each kept candidate.
  std::map<std::string, std::vector<int>> found_provenance;
  bool any_tuple = false;

  auto consider = [&](const std::vector<ComponentTranslation>& ordered) {
    auto words = recompose(ordered);
    for (const auto& w : words)
      if (w.all_bound && w.component_count == 1) return;
    std::vector<std::string> forms;
    for (const auto& w : words) forms.push_back(w.form);
    std::vector<int> provenance;
    for (const auto& t : ordered) provenance.push_back(t.origin_class);
    for (auto& cand : match(forms, tgt_corpus, limits.max_gap)) {
      auto key = cand.key();
      auto it = found.find(key);
      if (it == found.end()) {
        cand.components = ordered;
        cand.component_provenance = provenance;
        cand.source_term = source_term;
        cand.fertile = cand.content_lemmas.size() > source_words;
        found_provenance[key] = provenance;
        found.emplace(key, std::move(cand));
        continue;
      }
      auto& kept = it->second;
      // Same (lemma, POS) sequence: merge match sites; keep the smallest provenance.
      if (std::pair(provenance, ordered) < std::pair(found_provenance[key], kept.components)) {
        kept.components = ordered;
        kept.component_provenance = provenance;
        kept.target_words = cand.target_words;
        found_provenance[key] = provenance;
      }
      std::set<MatchSpan> spans(kept.match_positions.begin(), kept.match_positions.end());
      spans.insert(cand.match_positions.begin(), cand.match_positions.end());
      kept.match_positions.assign(spans.begin(), spans.end());
    }
  };

  for (const auto& d : result.decompositions) {
    for (const auto& sizes : groupings(d.components.size())) {
      std::vector<std::vector<ComponentTranslation>> options;
      std::size_t at = 0;
      bool translatable = true;
      for (auto s : sizes) {
        auto group = std::span<const Morpheme>(d.components).subspan(at, s);
        at += s;
        auto t = translate_element(bank, group);
        if (t.empty()) {
          translatable = false;
          break;
        }
        options.push_back(std::move(t));
      }
      if (!translatable) continue;

      // Odometer over the cartesian product of element translations.
      std::vector<std::size_t> pick(options.size(), 0);
      while (true) {
        if (result.tuples >= limits.tuple_budget) {
          result.truncated = true;
          break;
        }
        ++result.tuples;
        any_tuple = true;
        std::vector<ComponentTranslation> tuple;
        for (std::size_t e = 0; e < options.size(); ++e) tuple.push_back(options[e][pick[e]]);
        if (tuple.size() > limits.max_permute) {
          result.permutation_limited = true;
          consider(tuple);
        } else {
          for (const auto& ordered : permutations(std::span<const ComponentTranslation>(tuple), limits.max_permute))
            consider(ordered);
        }
        std::size_t e = 0;
        for (; e < pick.size(); ++e) {
          if (++pick[e] < options[e].size()) break;
          pick[e] = 0;
        }
        if (e == pick.size()) break;
      }
      if (result.truncated) break;
    }
    if (result.truncated) break;
  }

  for (auto& [key, cand] : found) {
    // Surfaces were collected per matching call; rebuild them over the merged spans.
    std::vector<std::string> surfaces;
    for (const auto& span : cand.match_positions) {
      std::vector<std::string> parts;
      for (auto q = span.begin; q < span.end; ++q) parts.push_back(tgt_corpus.tokens()[q].surface);
      auto s = text::join(parts, " ");
      if (std::find(surfaces.begin(), surfaces.end(), s) == surfaces.end()) surfaces.push_back(std::move(s));
    }
    cand.surfaces = std::move(surfaces);
    result.candidates.push_back(std::move(cand));
  }
  if (result.candidates.empty())
    result.status = any_tuple ? GenerationStatus::no_corpus_match : GenerationStatus::component_untranslatable;
  return result;
}

}  // namespace morphotrans
