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

// TopN precision against a reference lexicon, annotator agreement, corpus
// comparability and the morpheme-driven term bootstrapping loop.

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "morphotrans/corpus.hpp"
#include "morphotrans/errors.hpp"
#include "morphotrans/ltr.hpp"
#include "morphotrans/morpheme.hpp"
#include "morphotrans/ranker.hpp"
#include "morphotrans/resources.hpp"
#include "morphotrans/text.hpp"

namespace morphotrans {

/// Case-, diacritic- and whitespace-insensitive form of a surface string.
inline std::string fold_surface(std::string_view s) { return text::fold_phrase(s); }

// ---------------------------------------------------------------------------
// Reference lexicon

class ReferenceLexicon {
 public:
  /// A reference is either a surface string or a "lemma/POS ..." sequence.
  void add(const std::string& source, const std::string& reference) {
    auto ref = std::string(text::trim(reference));
    if (ref.empty()) throw ParseError("empty reference for " + source);
    if (is_sequence(ref))
      sequences_[source].insert(normalize_candidate_key(ref));
    else
      surfaces_[source].insert(fold_surface(ref));
    terms_.insert(source);
  }

  bool has(const std::string& source) const { return terms_.count(source) > 0; }
  const std::set<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool matches(const std::string& source, const CandidateTranslation& c) const {
    if (auto it = sequences_.find(source); it != sequences_.end() && it->second.count(c.key())) return true;
    auto it = surfaces_.find(source);
    if (it == surfaces_.end()) return false;
    for (const auto& s : c.surfaces)
      if (it->second.count(fold_surface(s))) return true;
    std::vector<std::string> lemmas;
    for (const auto& [l, p] : c.pairs) lemmas.push_back(l);
    return it->second.count(fold_surface(text::join(lemmas, " "))) > 0;
  }

  static bool is_sequence(std::string_view ref) {
    auto toks = text::split_ws(ref);
    for (const auto& t : toks) {
      auto slash = t.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == t.size()) return false;
    }
    return !toks.empty();
  }

 private:
  std::set<std::string> terms_;
  std::map<std::string, std::set<std::string>> surfaces_;
  std::map<std::string, std::set<std::string>> sequences_;
};

/// `source<TAB>target_surface`, several rows per source allowed.
inline ReferenceLexicon read_reference(std::istream& in, const std::string& name) {
  ReferenceLexicon ref;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f.size() != 2) throw ParseError(name, lineno, "expected 2 tab-separated columns, got " + std::to_string(f.size()));
    try {
      ref.add(std::string(text::trim(f[0])), f[1]);
    } catch (const ParseError& e) {
      throw ParseError(name, lineno, e.what());
    }
  }
  return ref;
}

inline ReferenceLexicon load_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reference lexicon: " + path);
  return read_reference(in, path);
}

// ---------------------------------------------------------------------------
// TopN precision

enum class Denominator { terms_with_candidates, all_terms };

inline std::string_view to_string(Denominator d) {
  return d == Denominator::all_terms ? "all-terms" : "terms-with-candidates";
}

inline Denominator parse_denominator(std::string_view s) {
  if (s == "terms-with-candidates" || s == "with-candidates") return Denominator::terms_with_candidates;
  if (s == "all-terms") return Denominator::all_terms;
  throw ConfigError("unknown evaluation denominator: " + std::string(s));
}

struct TopNOptions {
  Denominator denominator = Denominator::terms_with_candidates;
  bool label_overlay = false;  // items labelled exact also count as hits
};

inline bool is_hit(const RankedList& list, const RankedItem& item, const ReferenceLexicon& ref, const TopNOptions& opts) {
  if (opts.label_overlay && item.label == Label::exact) return true;
  return ref.matches(list.source_term, item.candidate);
}

/// Rank (1-based) of the first hit, or 0.
inline std::size_t first_hit_rank(const RankedList& list, const ReferenceLexicon& ref, const TopNOptions& opts) {
  for (std::size_t i = 0; i < list.items.size(); ++i)
    if (is_hit(list, list.items[i], ref, opts)) return i + 1;
  return 0;
}

inline std::size_t topn_denominator(std::span<const RankedList> lists, Denominator d) {
  std::size_t n = 0;
  for (const auto& l : lists)
    if (d == Denominator::all_terms || !l.items.empty()) ++n;
  return n;
}

inline double topn_precision(std::span<const RankedList> lists, const ReferenceLexicon& ref, std::size_t n,
                             const TopNOptions& opts = {}) {
  if (n < 1) throw ConfigError("TopN precision needs n >= 1");
  std::size_t denom = topn_denominator(lists, opts.denominator);
  if (denom == 0) throw Error("TopN precision: no list to evaluate");
  std::size_t hits = 0;
  for (const auto& l : lists) {
    auto r = first_hit_rank(l, ref, opts);
    if (r != 0 && r <= n) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(denom);
}

// ---------------------------------------------------------------------------
// Agreement

/// Cohen's kappa between two annotations of the same items.
inline double cohens_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) throw Error("cohens_kappa: annotation lengths differ");
  if (a.empty()) throw Error("cohens_kappa: no annotations");
  const double n = static_cast<double>(a.size());
  std::map<std::string, double> ma, mb;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma[a[i]] += 1.0;
    mb[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  double po = agree / n, pe = 0.0;
  for (const auto& [k, c] : ma)
    if (auto it = mb.find(k); it != mb.end()) pe += (c / n) * (it->second / n);
  if (pe >= 1.0) return 1.0;
  return (po - pe) / (1.0 - pe);
}

inline double cohens_kappa(std::span<const Label> a, std::span<const Label> b) {
  std::vector<std::string> sa, sb;
  for (auto l : a) sa.emplace_back(to_string(l));
  for (auto l : b) sb.emplace_back(to_string(l));
  return cohens_kappa(std::span<const std::string>(sa), std::span<const std::string>(sb));
}

// ---------------------------------------------------------------------------
// Comparability

using DictionaryPairs = std::vector<std::pair<Lemma, Lemma>>;

/// Lexical general and domain dictionary pairs of a bank.
inline DictionaryPairs dictionary_pairs(const ResourceBank& bank) {
  DictionaryPairs out;
  for (const auto& s : bank.dictionary_sources())
    for (const auto& t : bank.dictionary_translations(s)) out.emplace_back(s, t);
  return out;
}

struct ComparabilityResult {
  double value = 0.0;
  double source_to_target = 0.0;
  double target_to_source = 0.0;
  std::size_t source_covered = 0;
  std::size_t target_covered = 0;
};

namespace detail {
inline double directional_comparability(const AnnotatedCorpus& from, const AnnotatedCorpus& to,
                                        const std::map<Lemma, std::set<Lemma>>& dict, std::size_t& covered) {
  std::size_t found = 0;
  covered = 0;
  for (const auto& lemma : from.vocabulary()) {
    if (from.is_stopword(lemma)) continue;
    auto it = dict.find(lemma);
    if (it == dict.end()) continue;
    ++covered;
    for (const auto& t : it->second)
      if (to.contains(t)) {
        ++found;
        break;
      }
  }
  return covered ? static_cast<double>(found) / static_cast<double>(covered) : 0.0;
}
}  // namespace detail

/// Type-level comparability: per direction, the share of dictionary-covered
/// vocabulary with at least one translation present in the other corpus; averaged.
inline ComparabilityResult comparability(const AnnotatedCorpus& src, const AnnotatedCorpus& tgt,
                                         std::span<const std::pair<Lemma, Lemma>> dictionary) {
  if (dictionary.empty()) throw ConfigError("comparability: empty dictionary");
  std::map<Lemma, std::set<Lemma>> fwd, bwd;
  for (const auto& [s, t] : dictionary) {
    fwd[text::to_lower(s)].insert(text::to_lower(t));
    bwd[text::to_lower(t)].insert(text::to_lower(s));
  }
  ComparabilityResult r;
  r.source_to_target = detail::directional_comparability(src, tgt, fwd, r.source_covered);
  r.target_to_source = detail::directional_comparability(tgt, src, bwd, r.target_covered);
  if (r.source_covered == 0 || r.target_covered == 0)
    throw Error("comparability: no dictionary-covered vocabulary");
  r.value = 0.5 * (r.source_to_target + r.target_to_source);
  return r;
}

// ---------------------------------------------------------------------------
// Bootstrapping

struct BootstrapResult {
  std::set<std::string> candidates;
  std::set<Morpheme> new_morphemes;
};

/// Word types containing a seed morpheme (or a hyphen), minus terms already sorted.
/// New morphemes are the bound morphemes of accepted splits missing from the seeds.
inline BootstrapResult bootstrap_source_terms(const AnnotatedCorpus& corpus, const std::set<Morpheme>& seeds,
                                              const std::set<std::string>& accepted,
                                              const std::set<std::string>& rejected,
                                              const std::map<std::string, std::vector<Morpheme>>& accepted_splits = {}) {
  if (seeds.empty()) throw ConfigError("bootstrap_source_terms: empty seed list");
  BootstrapResult r;
  for (const auto& w : corpus.vocabulary()) {
    if (accepted.count(w) || rejected.count(w)) continue;
    bool hit = w.find('-') != std::string::npos;
    for (auto it = seeds.begin(); !hit && it != seeds.end(); ++it)
      hit = !it->form.empty() && w.find(it->form) != std::string::npos;
    if (hit) r.candidates.insert(w);
  }
  for (const auto& [term, split] : accepted_splits) {
    if (!accepted.count(term)) continue;
    for (const auto& m : split)
      if (is_bound(m.kind) && !seeds.count(m)) r.new_morphemes.insert(m);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fertility

using CandidatePredicate = std::function<bool(const RankedList&, const RankedItem&)>;

inline double fertility_share(std::span<const RankedList> lists, const CandidatePredicate& correct) {
  std::size_t total = 0, fertile = 0;
  for (const auto& l : lists)
    for (const auto& it : l.items)
      if (correct(l, it)) {
        ++total;
        if (it.candidate.fertile) ++fertile;
      }
  if (total == 0) throw Error("fertility_share: no correct candidate");
  return static_cast<double>(fertile) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Report

struct MethodPrecision {
  std::string method;
  double top1 = 0.0, top2 = 0.0, top3 = 0.0;
};

struct EvaluationReport {
  std::vector<MethodPrecision> per_method;
  std::size_t terms_total = 0;
  std::size_t terms_with_candidates = 0;
  std::size_t terms_with_reference_hit = 0;
  Denominator denominator = Denominator::terms_with_candidates;
  std::optional<double> fertility_share;
};

/// One method's precision row; `lists` must all be ranked by that method.
inline MethodPrecision evaluate_method(const std::string& method, std::span<const RankedList> lists,
                                       const ReferenceLexicon& ref, const TopNOptions& opts = {}) {
  MethodPrecision m;
  m.method = method;
  m.top1 = topn_precision(lists, ref, 1, opts);
  m.top2 = topn_precision(lists, ref, 2, opts);
  m.top3 = topn_precision(lists, ref, 3, opts);
  if (!(m.top1 <= m.top2 && m.top2 <= m.top3)) throw InvariantError("TopN precision decreased with N");
  return m;
}

/// Counts and fertility share from any one ranking of the lists (order-independent).
inline void fill_counts(EvaluationReport& r, std::span<const RankedList> lists, const ReferenceLexicon& ref,
                        const TopNOptions& opts = {}) {
  r.terms_total = lists.size();
  r.terms_with_candidates = topn_denominator(lists, Denominator::terms_with_candidates);
  r.terms_with_reference_hit = 0;
  for (const auto& l : lists)
    if (first_hit_rank(l, ref, opts) != 0) ++r.terms_with_reference_hit;
  r.denominator = opts.denominator;
  auto correct = [&](const RankedList& l, const RankedItem& it) { return is_hit(l, it, ref, opts); };
  if (r.terms_with_reference_hit > 0)
    r.fertility_share = fertility_share(lists, correct);
  else
    r.fertility_share.reset();
}

inline nlohmann::json to_json(const EvaluationReport& r) {
  nlohmann::json j;
  j["denominator"] = std::string(to_string(r.denominator));
  j["terms_total"] = r.terms_total;
  j["terms_with_candidates"] = r.terms_with_candidates;
  j["terms_with_reference_hit"] = r.terms_with_reference_hit;
  j["fertility_share"] = r.fertility_share ? nlohmann::json(*r.fertility_share) : nlohmann::json(nullptr);
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& m : r.per_method)
    methods.push_back({{"method", m.method}, {"top1", m.top1}, {"top2", m.top2}, {"top3", m.top3}});
  j["methods"] = methods;
  return j;
}

inline std::string format_fixed(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Methods as rows, Top1/Top2/Top3 as columns.
inline std::string render_table(const EvaluationReport& r) {
  std::size_t width = 6;
  for (const auto& m : r.per_method) width = std::max(width, m.method.size());
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
  std::ostringstream out;
  out << "terms: " << r.terms_total << "  with candidates: " << r.terms_with_candidates
      << "  with reference hit: " << r.terms_with_reference_hit << "\n";
  out << "denominator: " << to_string(r.denominator) << "\n";
  if (r.fertility_share) out << "fertile share of correct translations: " << format_fixed(*r.fertility_share) << "\n";
  out << pad("Method") << "Top1   Top2   Top3\n";
  for (const auto& m : r.per_method)
    out << pad(m.method) << format_fixed(m.top1) << "  " << format_fixed(m.top2) << "  " << format_fixed(m.top3) << "\n";
  return out.str();
}

}  // namespace morphotrans
