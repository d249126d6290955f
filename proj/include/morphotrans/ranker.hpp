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

// Ranking features (FREQ, POS, CONT, RESO), their linear combination, the
// exhaustive reliability-profile search and the single-method rankers.

#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "morphotrans/corpus.hpp"
#include "morphotrans/errors.hpp"
#include "morphotrans/generator.hpp"
#include "morphotrans/metrics.hpp"
#include "morphotrans/morpheme.hpp"
#include "morphotrans/resources.hpp"

namespace morphotrans {

enum class Label { exact, acceptable, related, wrong };

inline std::string_view to_string(Label l) {
  switch (l) {
    case Label::exact: return "exact";
    case Label::acceptable: return "acceptable";
    case Label::related: return "related";
    case Label::wrong: return "wrong";
  }
  return "wrong";
}

inline Label parse_label(std::string_view s) {
  if (s == "exact") return Label::exact;
  if (s == "acceptable") return Label::acceptable;
  if (s == "related") return Label::related;
  if (s == "wrong") return Label::wrong;
  throw ParseError("unknown label: " + std::string(s));
}

/// Which labels count as relevant. By default only exact translations.
struct RelevanceMapping {
  bool include_acceptable = false;
  bool relevant(Label l) const { return l == Label::exact || (include_acceptable && l == Label::acceptable); }
};

/// Feature order used by COMBI weights and by the learned models.
enum Feature : std::size_t { kFreq = 0, kPos = 1, kCont = 2, kReso = 3 };
inline constexpr std::size_t kFeatureCount = 4;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {"FREQ", "POS", "CONT", "RESO"};

using FeatureWeights = std::array<double, kFeatureCount>;

struct FeatureVector {
  double freq = 0.0;
  double pos = 0.0;
  double cont = 0.0;
  double reso = 0.0;
  double combi = 0.0;

  std::array<double, kFeatureCount> raw() const { return {freq, pos, cont, reso}; }
};

/// Reliability per origin class 1..8.
struct ReliabilityProfile {
  std::array<double, kOriginClassCount> rel{};

  double operator()(int origin_class) const {
    if (!valid_origin_class(origin_class)) throw InvariantError("origin class out of range: " + std::to_string(origin_class));
    return rel[static_cast<std::size_t>(origin_class - 1)];
  }

  static ReliabilityProfile uniform(double v) {
    ReliabilityProfile p;
    p.rel.fill(v);
    return p;
  }

  friend bool operator==(const ReliabilityProfile&, const ReliabilityProfile&) = default;
  friend auto operator<=>(const ReliabilityProfile&, const ReliabilityProfile&) = default;
};

/// The six reliability values searched by default.
inline const std::vector<double>& default_reliability_grid() {
  static const std::vector<double> grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  return grid;
}

struct RankedItem {
  CandidateTranslation candidate;
  FeatureVector features;
  std::optional<Label> label;
  double score = 0.0;  // score of the active method
};

struct RankedList {
  std::string source_term;
  std::string source_pos;
  std::vector<RankedItem> items;
  std::string ranking_method;
};

// ---------------------------------------------------------------------------
// Individual scores

/// Occurrences of the candidate divided by the number of tokens in the target corpus.
inline double score_freq(const CandidateTranslation& c, const AnnotatedCorpus& corpus) {
  if (corpus.total_tokens() == 0) return 0.0;
  return static_cast<double>(c.match_count()) / static_cast<double>(corpus.total_tokens());
}

/// P(y|x) with y the candidate's full POS sequence (stopword tags included).
inline double score_pos(const CandidateTranslation& c, const std::string& source_pos,
                        const PosTransitionModel& model, std::vector<std::string>* warnings = nullptr) {
  if (warnings && !model.has_source(source_pos))
    warnings->push_back("source POS pattern '" + source_pos + "' not in the POS model");
  return model.probability(source_pos, c.pos_pattern());
}

/// Sum of pointwise minima over the sum of pointwise maxima of the two vectors;
/// a key missing from one side counts as zero there. 0 when both are empty.
inline double weighted_jaccard(const ContextVector& s, const ContextVector& t) {
  double num = 0.0;
  double den = 0.0;
  auto a = s.weights.begin();
  auto b = t.weights.begin();
  while (a != s.weights.end() || b != t.weights.end()) {
    if (b == t.weights.end() || (a != s.weights.end() && a->first < b->first)) {
      den += a->second;
      ++a;
    } else if (a == s.weights.end() || b->first < a->first) {
      den += b->second;
      ++b;
    } else {
      num += std::min(a->second, b->second);
      den += std::max(a->second, b->second);
      ++a;
      ++b;
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

/// Context vector of a source lemma with every key replaced by its dictionary
/// translations. Each translation inherits the weight; untranslatable keys drop.
inline ContextVector translated_source_vector(const std::string& source_term, const AnnotatedCorpus& src_corpus,
                                              const ResourceBank& bank) {
  auto lemma = text::to_lower(source_term);
  auto src = build_context_vector(src_corpus, {lemma});
  ContextVector out;
  out.owner = src.owner;
  for (const auto& [w, c] : src.weights)
    for (const auto& t : bank.dictionary_translations(w)) out.weights[t] += c;
  return out;
}

/// CONT against an already translated source vector.
inline double score_cont(const CandidateTranslation& c, const ContextVector& translated_source,
                         const AnnotatedCorpus& tgt_corpus) {
  if (c.content_lemmas.empty()) return 0.0;
  auto target = build_context_vector(tgt_corpus, std::span<const Lemma>(c.content_lemmas));
  return weighted_jaccard(translated_source, target);
}

inline double score_cont(const CandidateTranslation& c, const std::string& source_term,
                         const AnnotatedCorpus& src_corpus, const AnnotatedCorpus& tgt_corpus,
                         const ResourceBank& bank, std::vector<std::string>* diagnostics = nullptr) {
  if (!src_corpus.contains(text::to_lower(source_term))) {
    if (diagnostics) diagnostics->push_back("source term '" + source_term + "' absent from source corpus");
    return 0.0;
  }
  return score_cont(c, translated_source_vector(source_term, src_corpus, bank), tgt_corpus);
}

/// Mean reliability of the candidate's components.
inline double score_reso(std::span<const int> provenance, const ReliabilityProfile& profile) {
  if (provenance.empty()) return 0.0;
  double sum = 0.0;
  for (int cls : provenance) sum += profile(cls);
  return sum / static_cast<double>(provenance.size());
}

inline double score_reso(const CandidateTranslation& c, const ReliabilityProfile& profile) {
  return score_reso(std::span<const int>(c.component_provenance), profile);
}

inline const FeatureWeights& uniform_weights() {
  static const FeatureWeights w = {0.25, 0.25, 0.25, 0.25};
  return w;
}

inline void validate_weights(const FeatureWeights& w) {
  bool any = false;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ConfigError("COMBI weights must be finite and non-negative");
    any = any || x > 0.0;
  }
  if (!any) throw ConfigError("COMBI weights are all zero");
}

/// Per-list min-max normalisation of the four features. A constant feature maps to 0.
inline std::vector<std::array<double, kFeatureCount>> normalized_features(std::span<const FeatureVector> fvs) {
  std::vector<std::array<double, kFeatureCount>> out(fvs.size());
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& fv : fvs) {
      lo = std::min(lo, fv.raw()[f]);
      hi = std::max(hi, fv.raw()[f]);
    }
    for (std::size_t i = 0; i < fvs.size(); ++i)
      out[i][f] = hi > lo ? (fvs[i].raw()[f] - lo) / (hi - lo) : 0.0;
  }
  return out;
}

/// Weighted sum of already normalised features.
inline double score_combi(const std::array<double, kFeatureCount>& normalized, const FeatureWeights& weights) {
  validate_weights(weights);
  double s = 0.0;
  for (std::size_t f = 0; f < kFeatureCount; ++f) s += weights[f] * normalized[f];
  return s;
}

/// Fills `combi` of every item from the list-normalised features.
inline void apply_combi(RankedList& list, const FeatureWeights& weights) {
  std::vector<FeatureVector> fvs;
  for (const auto& it : list.items) fvs.push_back(it.features);
  auto norm = normalized_features(fvs);
  for (std::size_t i = 0; i < list.items.size(); ++i) list.items[i].features.combi = score_combi(norm[i], weights);
}

/// Everything needed to compute the features of a candidate list.
struct FeatureContext {
  const AnnotatedCorpus* src_corpus = nullptr;
  const AnnotatedCorpus* tgt_corpus = nullptr;
  const ResourceBank* bank = nullptr;
  ReliabilityProfile profile = ReliabilityProfile::uniform(1.0);
  FeatureWeights combi_weights = uniform_weights();
};

inline void compute_features(RankedList& list, const FeatureContext& ctx, std::vector<std::string>* diagnostics = nullptr) {
  std::optional<ContextVector> source_vec;
  if (ctx.src_corpus->contains(text::to_lower(list.source_term))) {
    source_vec = translated_source_vector(list.source_term, *ctx.src_corpus, *ctx.bank);
  } else if (diagnostics && !list.items.empty()) {
    diagnostics->push_back("source term '" + list.source_term + "' absent from source corpus");
  }
  bool warned = false;
  for (auto& item : list.items) {
    auto& fv = item.features;
    fv.freq = score_freq(item.candidate, *ctx.tgt_corpus);
    fv.pos = score_pos(item.candidate, list.source_pos, ctx.bank->pos_model(), warned ? nullptr : diagnostics);
    warned = true;
    fv.cont = source_vec ? score_cont(item.candidate, *source_vec, *ctx.tgt_corpus) : 0.0;
    fv.reso = score_reso(item.candidate, ctx.profile);
  }
  apply_combi(list, ctx.combi_weights);
}

// ---------------------------------------------------------------------------
// Ranking

enum class RankingMethod { random, freq, pos, cont, reso, combi, ltr };

inline std::string_view to_string(RankingMethod m) {
  switch (m) {
    case RankingMethod::random: return "RANDOM";
    case RankingMethod::freq: return "FREQ";
    case RankingMethod::pos: return "POS";
    case RankingMethod::cont: return "CONT";
    case RankingMethod::reso: return "RESO";
    case RankingMethod::combi: return "COMBI";
    case RankingMethod::ltr: return "LTR";
  }
  return "RANDOM";
}

inline RankingMethod parse_method(std::string_view s) {
  auto up = std::string(s);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto m : {RankingMethod::random, RankingMethod::freq, RankingMethod::pos, RankingMethod::cont,
                 RankingMethod::reso, RankingMethod::combi, RankingMethod::ltr})
    if (to_string(m) == up) return m;
  throw ConfigError("unknown ranking method: " + std::string(s));
}

/// Tie-break order: match count descending, then (lemma, POS) sequence ascending.
inline void sort_tie_break(std::vector<RankedItem>& items) {
  std::stable_sort(items.begin(), items.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.candidate.match_count() != b.candidate.match_count())
      return a.candidate.match_count() > b.candidate.match_count();
    return a.candidate.pairs < b.candidate.pairs;
  });
}

/// Orders items by descending score with the standard tie-break; sets item.score.
inline void order_by_scores(RankedList& list, const std::vector<double>& scores_in_item_order) {
  for (std::size_t i = 0; i < list.items.size(); ++i) list.items[i].score = scores_in_item_order[i];
  sort_tie_break(list.items);
  std::vector<double> scores;
  for (const auto& it : list.items) scores.push_back(it.score);
  auto order = order_desc(scores);
  std::vector<RankedItem> sorted;
  sorted.reserve(order.size());
  for (auto i : order) sorted.push_back(std::move(list.items[i]));
  list.items = std::move(sorted);
}

/// Linear model score on list-normalised features.
inline std::vector<double> linear_scores(const RankedList& list, const FeatureWeights& w) {
  std::vector<FeatureVector> fvs;
  for (const auto& it : list.items) fvs.push_back(it.features);
  auto norm = normalized_features(fvs);
  std::vector<double> out;
  for (const auto& n : norm) {
    double s = 0.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) s += w[f] * n[f];
    out.push_back(s);
  }
  return out;
}

struct RankOptions {
  std::uint64_t seed = 0;
  std::optional<FeatureWeights> model_weights;  // required for LTR
};

/// Seed of the RANDOM shuffle of one list: the run seed mixed with the source term.
inline std::uint64_t list_seed(std::uint64_t seed, const std::string& source_term) {
  return seed ^ text::fnv1a(source_term);
}

/// Sorts a list by the method's score. RANDOM is a seeded uniform shuffle per list.
inline RankedList rank(RankedList list, RankingMethod method, const RankOptions& opts = {}) {
  list.ranking_method = std::string(to_string(method));
  std::vector<double> scores;
  switch (method) {
    case RankingMethod::random: {
      sort_tie_break(list.items);
      seeded_shuffle(list.items, list_seed(opts.seed, list.source_term));
      for (auto& it : list.items) it.score = 0.0;
      return list;
    }
    case RankingMethod::freq:
      for (const auto& it : list.items) scores.push_back(it.features.freq);
      break;
    case RankingMethod::pos:
      for (const auto& it : list.items) scores.push_back(it.features.pos);
      break;
    case RankingMethod::cont:
      for (const auto& it : list.items) scores.push_back(it.features.cont);
      break;
    case RankingMethod::reso:
      for (const auto& it : list.items) scores.push_back(it.features.reso);
      break;
    case RankingMethod::combi:
      for (const auto& it : list.items) scores.push_back(it.features.combi);
      break;
    case RankingMethod::ltr:
      if (!opts.model_weights) throw ConfigError("LTR ranking requires a model");
      scores = linear_scores(list, *opts.model_weights);
      break;
  }
  order_by_scores(list, scores);
  return list;
}

// ---------------------------------------------------------------------------
// Reliability tuning

struct TuningResult {
  ReliabilityProfile profile;
  double map = 0.0;
  std::size_t profiles_evaluated = 0;
  std::size_t lists_used = 0;
  std::size_t lists_excluded = 0;  // no relevant item
};

namespace detail {

struct TuneItem {
  std::array<double, kOriginClassCount> class_share{};  // count of class / component count
  bool relevant = false;
};

struct TuneList {
  std::vector<TuneItem> items;  // in tie-break order
};

inline std::vector<TuneList> prepare_tuning(std::span<const RankedList> training, const RelevanceMapping& mapping,
                                            std::size_t* excluded) {
  std::vector<TuneList> out;
  *excluded = 0;
  for (const auto& list : training) {
    auto items = list.items;
    sort_tie_break(items);
    TuneList tl;
    bool any_relevant = false;
    for (const auto& it : items) {
      TuneItem ti;
      const auto& prov = it.candidate.component_provenance;
      for (int cls : prov) {
        if (!valid_origin_class(cls)) throw InvariantError("origin class out of range");
        ti.class_share[static_cast<std::size_t>(cls - 1)] += 1.0 / static_cast<double>(prov.size());
      }
      ti.relevant = it.label && mapping.relevant(*it.label);
      any_relevant = any_relevant || ti.relevant;
      tl.items.push_back(ti);
    }
    if (!any_relevant) {
      ++*excluded;
      continue;
    }
    out.push_back(std::move(tl));
  }
  return out;
}

inline double tuning_map(const std::vector<TuneList>& lists, const ReliabilityProfile& p) {
  double total = 0.0;
  std::vector<double> scores;
  std::vector<std::size_t> order;
  for (const auto& l : lists) {
    const auto n = l.items.size();
    scores.resize(n);
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < kOriginClassCount; ++c) s += l.items[i].class_share[c] * p.rel[c];
      scores[i] = s;
    }
    // Same ordering as order_desc(), without allocating.
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i;
      while (j > 0 && score_above(scores[i], scores[order[j - 1]])) {
        order[j] = order[j - 1];
        --j;
      }
      order[j] = i;
    }
    double hits = 0.0, sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!l.items[order[k]].relevant) continue;
      hits += 1.0;
      sum += hits / static_cast<double>(k + 1);
    }
    total += sum / hits;
  }
  return total / static_cast<double>(lists.size());
}

inline ReliabilityProfile profile_at(std::uint64_t index, std::span<const double> grid) {
  ReliabilityProfile p;
  for (std::size_t c = kOriginClassCount; c-- > 0;) {
    p.rel[c] = grid[index % grid.size()];
    index /= grid.size();
  }
  return p;
}

}  // namespace detail

/// MAP of RESO-only rankings of labelled lists under a given profile.
inline double reso_map(std::span<const RankedList> training, const ReliabilityProfile& profile,
                       const RelevanceMapping& mapping = {}) {
  std::size_t excluded = 0;
  auto lists = detail::prepare_tuning(training, mapping, &excluded);
  if (lists.empty()) throw Error("no labelled list has a relevant item");
  return detail::tuning_map(lists, profile);
}

/// Exhaustive search over every assignment of grid values to the 8 origin classes,
/// ranking each training list by RESO alone. Returns the profile with the highest
/// MAP; ties go to the lexicographically smallest profile (class 1 first).
inline TuningResult tune_reliability(std::span<const RankedList> training,
                                     std::vector<double> grid = default_reliability_grid(),
                                     const RelevanceMapping& mapping = {}, unsigned threads = 0) {
  if (training.empty()) throw Error("tune_reliability: empty training set");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty()) throw ConfigError("tune_reliability: empty grid");
  for (double g : grid)
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("reliability grid values must lie in [0,1]");

  TuningResult result;
  auto lists = detail::prepare_tuning(training, mapping, &result.lists_excluded);
  if (lists.empty()) throw Error("tune_reliability: no training list has a relevant item");
  result.lists_used = lists.size();

  std::uint64_t total = 1;
  for (int c = 0; c < kOriginClassCount; ++c) total *= grid.size();
  result.profiles_evaluated = total;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  struct Best {
    double map = -1.0;
    std::uint64_t index = 0;
  };
  std::vector<Best> best(threads);
  auto worker = [&](unsigned t) {
    std::uint64_t lo = total * t / threads;
    std::uint64_t hi = total * (t + 1) / threads;
    Best b;
    for (std::uint64_t i = lo; i < hi; ++i) {
      double m = detail::tuning_map(lists, detail::profile_at(i, grid));
      if (m > b.map) b = {m, i};
    }
    best[t] = b;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  Best overall = best[0];
  for (unsigned t = 1; t < threads; ++t)
    if (best[t].map > overall.map) overall = best[t];
  result.profile = detail::profile_at(overall.index, grid);
  result.map = overall.map;
  return result;
}

}  // namespace morphotrans
