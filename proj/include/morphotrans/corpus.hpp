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

// Pre-annotated corpora: ingestion of the vertical token format, the lemma
// index used for matching, and log-likelihood weighted context vectors.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphotrans/errors.hpp"
#include "morphotrans/text.hpp"

namespace morphotrans {

using Lemma = std::string;
using Position = std::size_t;

/// Half-width of the co-occurrence window, in tokens.
inline constexpr std::size_t kContextWindow = 5;

struct Token {
  std::string surface;
  Lemma lemma;  // lowercased at ingestion
  std::string pos;
  std::size_t sentence_id = 0;
  Position position = 0;
};

/// Immutable, indexed token stream of one language.
class AnnotatedCorpus {
 public:
  AnnotatedCorpus() = default;

  AnnotatedCorpus(std::string language, std::vector<Token> tokens, std::set<Lemma> stopwords)
      : language_(std::move(language)), tokens_(std::move(tokens)), stopwords_(std::move(stopwords)) {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      tokens_[i].position = i;
      lemma_index_[tokens_[i].lemma].push_back(i);
      auto sid = tokens_[i].sentence_id;
      if (sid >= sentences_.size()) sentences_.resize(sid + 1, {i, i});
      sentences_[sid].second = i + 1;
    }
    window_sizes_.resize(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      auto [lo, hi] = window(i, kContextWindow);
      window_sizes_[i] = hi - lo - 1;
      total_pairs_ += window_sizes_[i];
    }
  }

  const std::string& language() const { return language_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t total_tokens() const { return tokens_.size(); }
  const std::set<Lemma>& stopwords() const { return stopwords_; }
  const std::unordered_map<Lemma, std::vector<Position>>& lemma_index() const { return lemma_index_; }

  bool is_stopword(const Lemma& lemma) const { return stopwords_.count(lemma) > 0; }
  bool is_stopword_at(Position p) const { return is_stopword(tokens_[p].lemma); }

  /// Positions of a (lowercased) lemma, increasing. Empty when absent.
  std::span<const Position> occurrences(const Lemma& lemma) const {
    auto it = lemma_index_.find(lemma);
    if (it == lemma_index_.end()) return {};
    return it->second;
  }

  /// Sorted distinct lemmas.
  std::vector<Lemma> vocabulary() const {
    std::vector<Lemma> out;
    out.reserve(lemma_index_.size());
    for (const auto& [lemma, _] : lemma_index_) out.push_back(lemma);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(const Lemma& lemma) const { return lemma_index_.count(lemma) > 0; }

  /// Half-open token range of the sentence containing p.
  std::pair<Position, Position> sentence_span(Position p) const { return sentences_[tokens_[p].sentence_id]; }

  /// Half-open range [lo, hi) of positions within `radius` of p, clipped to p's sentence.
  std::pair<Position, Position> window(Position p, std::size_t radius) const {
    auto [begin, end] = sentence_span(p);
    Position lo = p >= begin + radius ? p - radius : begin;
    Position hi = std::min(end, p + radius + 1);
    return {lo, hi};
  }

  /// Number of neighbours of p inside the context window.
  std::size_t window_size(Position p) const { return window_sizes_[p]; }

  /// Sum of window sizes over the corpus: the number of ordered co-occurrence pairs.
  std::size_t total_pairs() const { return total_pairs_; }

  /// Most frequent POS tag of a lemma (ties: lexicographically smallest).
  std::optional<std::string> dominant_pos(const Lemma& lemma) const {
    auto occ = occurrences(lemma);
    if (occ.empty()) return std::nullopt;
    std::map<std::string, std::size_t> counts;
    for (auto p : occ) ++counts[tokens_[p].pos];
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
      if (it->second > best->second) best = it;
    return best->first;
  }

  friend bool operator==(const AnnotatedCorpus& a, const AnnotatedCorpus& b) {
    if (a.language_ != b.language_ || a.stopwords_ != b.stopwords_ || a.tokens_.size() != b.tokens_.size())
      return false;
    for (std::size_t i = 0; i < a.tokens_.size(); ++i) {
      const auto& x = a.tokens_[i];
      const auto& y = b.tokens_[i];
      if (x.surface != y.surface || x.lemma != y.lemma || x.pos != y.pos || x.sentence_id != y.sentence_id ||
          x.position != y.position)
        return false;
    }
    return true;
  }

 private:
  std::string language_;
  std::vector<Token> tokens_;
  std::set<Lemma> stopwords_;
  std::unordered_map<Lemma, std::vector<Position>> lemma_index_;
  std::vector<std::pair<Position, Position>> sentences_;
  std::vector<std::size_t> window_sizes_;
  std::size_t total_pairs_ = 0;
};

/// One lemma per line; blank lines and `#` comments skipped. Lemmas are lowercased.
inline std::set<Lemma> read_stopwords(std::istream& in) {
  std::set<Lemma> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.insert(text::to_lower(t));
  }
  return out;
}

inline std::set<Lemma> read_stopwords(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file: " + path);
  return read_stopwords(in);
}

/// Parses the vertical format `surface<TAB>lemma<TAB>pos`, blank line = sentence break,
/// `#` lines ignored. When `allowed_tags` is given, unknown POS tags are parse errors.
inline AnnotatedCorpus ingest_corpus(std::istream& in, const std::string& name, const std::string& language,
                                     std::set<Lemma> stopwords,
                                     const std::optional<std::set<std::string>>& allowed_tags = std::nullopt) {
  std::vector<Token> tokens;
  std::size_t sentence = 0;
  bool sentence_open = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    if (text::trim(line).empty()) {
      if (sentence_open) {
        ++sentence;
        sentence_open = false;
      }
      continue;
    }
    auto fields = text::split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(name, lineno, "expected 3 tab-separated columns, got " + std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty() || fields[2].empty())
      throw ParseError(name, lineno, "empty surface, lemma or POS");
    if (allowed_tags && !allowed_tags->count(fields[2]))
      throw ParseError(name, lineno, "POS tag not in tag set: " + fields[2]);
    Token tok;
    tok.surface = std::move(fields[0]);
    tok.lemma = text::to_lower(fields[1]);
    tok.pos = std::move(fields[2]);
    tok.sentence_id = sentence;
    tokens.push_back(std::move(tok));
    sentence_open = true;
  }
  if (tokens.empty()) throw EmptyCorpusError("empty corpus: " + name);
  return AnnotatedCorpus(language, std::move(tokens), std::move(stopwords));
}

inline AnnotatedCorpus ingest_corpus(const std::string& path, const std::string& language,
                                     const std::string& stopword_path,
                                     const std::optional<std::set<std::string>>& allowed_tags = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus: " + path);
  return ingest_corpus(in, path, language, read_stopwords(stopword_path), allowed_tags);
}

/// Convenience for tests and fixtures: "surface/lemma/POS ..." with " | " as sentence break.
inline AnnotatedCorpus corpus_from_string(const std::string& spec, const std::string& language,
                                          std::set<Lemma> stopwords = {}) {
  std::ostringstream vertical;
  for (const auto& item : text::split_ws(spec)) {
    if (item == "|") {
      vertical << "\n";
      continue;
    }
    auto parts = text::split(item, '/');
    if (parts.size() != 3) throw ParseError("bad token spec: " + item);
    vertical << parts[0] << '\t' << parts[1] << '\t' << parts[2] << '\n';
  }
  std::istringstream in(vertical.str());
  return ingest_corpus(in, "<string>", language, std::move(stopwords));
}

struct ContextVector {
  std::vector<Lemma> owner;
  std::map<Lemma, double> weights;
};

/// Raw window co-occurrence counts of the owner lemmas with every other lemma.
/// For several owners the per-owner counts are summed pointwise. Owner lemmas and
/// stopwords never appear as keys.
inline std::map<Lemma, double> raw_cooccurrences(const AnnotatedCorpus& corpus, std::span<const Lemma> lemmas,
                                                 std::size_t radius = kContextWindow,
                                                 bool drop_stopwords = true) {
  std::set<Lemma> owners;
  for (const auto& l : lemmas) owners.insert(text::to_lower(l));
  std::map<Lemma, double> counts;
  const auto& toks = corpus.tokens();
  for (const auto& owner : owners) {
    for (auto p : corpus.occurrences(owner)) {
      auto [lo, hi] = corpus.window(p, radius);
      for (auto q = lo; q < hi; ++q) {
        if (q == p) continue;
        const auto& w = toks[q].lemma;
        if (owners.count(w)) continue;
        if (drop_stopwords && corpus.is_stopword(w)) continue;
        counts[w] += 1.0;
      }
    }
  }
  return counts;
}

namespace detail {
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace detail

/// Dunning's log-likelihood ratio (G²) for a 2x2 contingency table.
inline double log_likelihood_ratio(double k11, double k12, double k21, double k22) {
  using detail::xlogx;
  double n = k11 + k12 + k21 + k22;
  double g = xlogx(k11) + xlogx(k12) + xlogx(k21) + xlogx(k22) - xlogx(k11 + k12) - xlogx(k21 + k22) -
             xlogx(k11 + k21) - xlogx(k12 + k22) + xlogx(n);
  return std::max(0.0, 2.0 * g);
}

/// Context vector of one lemma or of a multi-word owner (union of the
/// components' raw counts), each count replaced by its LLR association score.
inline ContextVector build_context_vector(const AnnotatedCorpus& corpus, std::span<const Lemma> lemmas) {
  ContextVector cv;
  for (const auto& l : lemmas) cv.owner.push_back(text::to_lower(l));
  auto raw = raw_cooccurrences(corpus, cv.owner);
  if (raw.empty()) return cv;

  std::set<Lemma> owners(cv.owner.begin(), cv.owner.end());
  double row = 0.0;
  for (const auto& o : owners)
    for (auto p : corpus.occurrences(o)) row += static_cast<double>(corpus.window_size(p));
  const double n = static_cast<double>(corpus.total_pairs());

  for (const auto& [w, k11] : raw) {
    double col = 0.0;
    for (auto q : corpus.occurrences(w)) col += static_cast<double>(corpus.window_size(q));
    double k12 = std::max(0.0, row - k11);
    double k21 = std::max(0.0, col - k11);
    double k22 = std::max(0.0, n - k11 - k12 - k21);
    double score = log_likelihood_ratio(k11, k12, k21, k22);
    if (score > 0.0) cv.weights.emplace(w, score);
  }
  return cv;
}

inline ContextVector build_context_vector(const AnnotatedCorpus& corpus, std::initializer_list<Lemma> lemmas) {
  std::vector<Lemma> v(lemmas);
  return build_context_vector(corpus, std::span<const Lemma>(v));
}

}  // namespace morphotrans
