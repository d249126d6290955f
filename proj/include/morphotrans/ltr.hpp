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

// List-wise learning to rank over the four ranking features, optimising mean
// average precision: AdaRank (boosting single-feature weak rankers) and
// Coordinate Ascent (linear weights, cyclic coordinate search with restarts).

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "morphotrans/errors.hpp"
#include "morphotrans/metrics.hpp"
#include "morphotrans/ranker.hpp"
#include "morphotrans/text.hpp"

namespace morphotrans {

struct MapResult {
  double map = 0.0;
  std::size_t lists_used = 0;
  std::size_t lists_excluded = 0;
};

/// MAP of lists in their current order. Lists without a relevant item are excluded
/// and counted; an error is raised when no list remains.
inline MapResult mean_average_precision(std::span<const RankedList> lists, const RelevanceMapping& mapping = {}) {
  MapResult r;
  double total = 0.0;
  for (const auto& l : lists) {
    std::vector<bool> rel;
    bool any = false;
    for (const auto& it : l.items) {
      bool x = it.label && mapping.relevant(*it.label);
      rel.push_back(x);
      any = any || x;
    }
    if (!any) {
      ++r.lists_excluded;
      continue;
    }
    double hits = 0.0, sum = 0.0;
    for (std::size_t k = 0; k < rel.size(); ++k) {
      if (!rel[k]) continue;
      hits += 1.0;
      sum += hits / static_cast<double>(k + 1);
    }
    total += sum / hits;
    ++r.lists_used;
  }
  if (r.lists_used == 0) throw Error("mean_average_precision: no list with a relevant item");
  r.map = total / static_cast<double>(r.lists_used);
  return r;
}

// ---------------------------------------------------------------------------
// Labels

/// Labels keyed by source term, then by candidate "lemma/POS ..." sequence.
using LabelTable = std::map<std::string, std::map<std::string, Label>>;

/// Lowercases lemmas of a "lemma/POS lemma/POS" sequence and normalises spacing.
inline std::string normalize_candidate_key(std::string_view seq) {
  std::vector<std::string> parts;
  for (const auto& tok : text::split_ws(seq)) {
    auto slash = tok.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
      throw ParseError("malformed lemma/POS pair: " + tok);
    parts.push_back(text::to_lower(tok.substr(0, slash)) + tok.substr(slash));
  }
  if (parts.empty()) throw ParseError("empty candidate sequence");
  return text::join(parts, " ");
}

/// `source_term<TAB>candidate_lemma_pos_sequence<TAB>label`
inline LabelTable read_labels(std::istream& in, const std::string& name) {
  LabelTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f.size() != 3) throw ParseError(name, lineno, "expected 3 tab-separated columns, got " + std::to_string(f.size()));
    try {
      table[std::string(text::trim(f[0]))][normalize_candidate_key(f[1])] = parse_label(text::trim(f[2]));
    } catch (const ParseError& e) {
      throw ParseError(name, lineno, e.what());
    }
  }
  return table;
}

inline LabelTable load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file: " + path);
  return read_labels(in, path);
}

/// Sets item labels from the table; unlabelled items keep no label (non-relevant).
inline void attach_labels(std::vector<RankedList>& lists, const LabelTable& table) {
  for (auto& l : lists) {
    auto it = table.find(l.source_term);
    for (auto& item : l.items) {
      item.label.reset();
      if (it == table.end()) continue;
      auto jt = it->second.find(item.candidate.key());
      if (jt != it->second.end()) item.label = jt->second;
    }
  }
}

// ---------------------------------------------------------------------------
// Training data

struct TrainingInstance {
  RankedList list;                                      // items in tie-break order
  std::vector<std::array<double, kFeatureCount>> features;  // list-normalised
  std::vector<bool> relevance;
};

struct TrainingSet {
  std::vector<TrainingInstance> instances;
  std::size_t dropped_degenerate = 0;   // no feature varies across items
  std::size_t dropped_no_relevant = 0;  // nothing relevant to rank
};

inline TrainingSet make_training_set(std::span<const RankedList> lists, const RelevanceMapping& mapping = {}) {
  TrainingSet out;
  for (const auto& l : lists) {
    TrainingInstance inst;
    inst.list = l;
    sort_tie_break(inst.list.items);
    std::vector<FeatureVector> fvs;
    bool any_rel = false;
    for (const auto& it : inst.list.items) {
      fvs.push_back(it.features);
      bool r = it.label && mapping.relevant(*it.label);
      inst.relevance.push_back(r);
      any_rel = any_rel || r;
    }
    inst.features = normalized_features(fvs);
    bool varies = false;
    for (const auto& x : inst.features)
      for (double v : x) varies = varies || v != 0.0;
    if (!varies) {
      ++out.dropped_degenerate;
      continue;
    }
    if (!any_rel) {
      ++out.dropped_no_relevant;
      continue;
    }
    out.instances.push_back(std::move(inst));
  }
  return out;
}

namespace detail {

inline double instance_ap(const TrainingInstance& inst, const FeatureWeights& w) {
  std::vector<double> scores;
  scores.reserve(inst.features.size());
  for (const auto& x : inst.features) {
    double s = 0.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) s += w[f] * x[f];
    scores.push_back(s);
  }
  const auto order = order_desc(scores);
  double hits = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!inst.relevance[order[k]]) continue;
    hits += 1.0;
    sum += hits / static_cast<double>(k + 1);
  }
  return hits > 0.0 ? sum / hits : 0.0;
}

inline double training_map(std::span<const TrainingInstance> data, const FeatureWeights& w) {
  double total = 0.0;
  for (const auto& inst : data) total += instance_ap(inst, w);
  return total / static_cast<double>(data.size());
}

inline FeatureWeights unit_weights(std::size_t f) {
  FeatureWeights w{};
  w[f] = 1.0;
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Models

enum class LtrKind { adarank, coordinate_ascent };

inline std::string_view to_string(LtrKind k) { return k == LtrKind::adarank ? "AdaRank" : "CoordinateAscent"; }

inline LtrKind parse_ltr_kind(std::string_view s) {
  if (s == "AdaRank" || s == "adarank") return LtrKind::adarank;
  if (s == "CoordinateAscent" || s == "coordinate-ascent" || s == "coordinate_ascent") return LtrKind::coordinate_ascent;
  throw ConfigError("unknown LTR model kind: " + std::string(s));
}

struct WeakRankerStep {
  std::size_t feature = 0;
  double alpha = 0.0;
};

struct LtrModel {
  LtrKind kind = LtrKind::coordinate_ascent;
  FeatureWeights weights{};           // linear weights over normalised features
  std::vector<WeakRankerStep> steps;  // AdaRank rounds, in order
  double training_map = 0.0;
};

/// Orders a list by model score, standard tie-break.
inline RankedList apply_model(const LtrModel& model, RankedList list) {
  list.ranking_method = "LTR-" + std::string(to_string(model.kind));
  order_by_scores(list, linear_scores(list, model.weights));
  return list;
}

inline nlohmann::json to_json(const LtrModel& m) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(m.kind));
  nlohmann::json w = nlohmann::json::object();
  for (std::size_t f = 0; f < kFeatureCount; ++f) w[std::string(kFeatureNames[f])] = m.weights[f];
  j["weights"] = w;
  if (m.kind == LtrKind::adarank) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : m.steps) steps.push_back({{"feature", std::string(kFeatureNames[s.feature])}, {"alpha", s.alpha}});
    j["rounds"] = steps;
  }
  j["training_map"] = m.training_map;
  return j;
}

inline std::size_t feature_index(std::string_view name) {
  for (std::size_t f = 0; f < kFeatureCount; ++f)
    if (kFeatureNames[f] == name) return f;
  throw ParseError("unknown feature: " + std::string(name));
}

inline LtrModel model_from_json(const nlohmann::json& j) {
  try {
    LtrModel m;
    m.kind = parse_ltr_kind(j.at("kind").get<std::string>());
    const auto& w = j.at("weights");
    if (!w.is_object()) throw ParseError("model weights must be an object keyed by feature");
    for (auto it = w.begin(); it != w.end(); ++it) m.weights[feature_index(it.key())] = it.value().get<double>();
    if (j.contains("rounds"))
      for (const auto& s : j["rounds"]) m.steps.push_back({feature_index(s.at("feature").get<std::string>()), s.at("alpha").get<double>()});
    m.training_map = j.value("training_map", 0.0);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// AdaRank

struct AdaRankOptions {
  std::size_t rounds = 50;
  std::size_t max_consecutive = 5;  // same feature picked this many rounds in a row is set aside
};

struct AdaRankTrace {
  std::vector<std::vector<double>> list_weights;  // distribution after each accepted round
  std::vector<double> maps;                       // training MAP of the combined ranker per accepted round
};

/// Boosting over the four single-feature rankers. Each round picks the available
/// feature with the highest weighted average precision, adds it with
/// alpha = 1/2 ln(sum P(1+AP) / sum P(1-AP)), then re-weights lists by exp(-AP) of the
/// combined ranker. A step that lowers training MAP is undone and its feature set
/// aside; a feature picked max_consecutive rounds in a row is also set aside. Set-aside
/// features come back after the next accepted step, and training stops when none is
/// available. The returned model is the combination with the best training MAP.
inline LtrModel train_adarank(std::span<const TrainingInstance> data, const AdaRankOptions& opts = {},
                              AdaRankTrace* trace = nullptr) {
  if (opts.rounds < 1) throw ConfigError("AdaRank needs at least one round");
  if (opts.max_consecutive < 1) throw ConfigError("AdaRank max_consecutive must be at least 1");
  if (data.empty()) throw Error("AdaRank: empty training set");
  const std::size_t n = data.size();

  std::array<std::vector<double>, kFeatureCount> perf;
  bool any_varying = false;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    for (const auto& inst : data) {
      perf[f].push_back(detail::instance_ap(inst, detail::unit_weights(f)));
      for (const auto& x : inst.features) any_varying = any_varying || x[f] != 0.0;
    }
  }
  if (!any_varying) throw Error("AdaRank: every feature is constant");

  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  LtrModel model;
  model.kind = LtrKind::adarank;
  LtrModel best = model;
  best.training_map = -1.0;
  std::array<bool, kFeatureCount> aside{};
  std::size_t last = kFeatureCount, streak = 0;
  double current = 0.0;

  for (std::size_t round = 0; round < opts.rounds; ++round) {
    std::size_t pick = kFeatureCount;
    double pick_score = -1.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (aside[f]) continue;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += p[i] * perf[f][i];
      if (s > pick_score) {
        pick_score = s;
        pick = f;
      }
    }
    if (pick == kFeatureCount) break;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += p[i] * (1.0 + perf[pick][i]);
      den += p[i] * (1.0 - perf[pick][i]);
    }
    double alpha = 0.5 * std::log(num / std::max(den, 1e-10));
    FeatureWeights w = model.weights;
    w[pick] += alpha;

    std::vector<double> ap(n);
    double map = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ap[i] = detail::instance_ap(data[i], w);
      map += ap[i];
    }
    map /= static_cast<double>(n);
    if (map < current) {
      aside[pick] = true;
      continue;
    }
    model.weights = w;
    model.steps.push_back({pick, alpha});
    model.training_map = current = map;
    aside.fill(false);
    streak = pick == last ? streak + 1 : 1;
    last = pick;
    if (streak >= opts.max_consecutive) aside[pick] = true;

    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = std::exp(-ap[i]);
      z += p[i];
    }
    for (auto& x : p) x /= z;
    if (trace) {
      trace->list_weights.push_back(p);
      trace->maps.push_back(map);
    }
    if (map > best.training_map) best = model;
    if (map >= 1.0) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Coordinate Ascent

struct CoordinateAscentOptions {
  std::size_t restarts = 10;
  std::size_t max_sweeps = 50;
  std::vector<double> multiplicative_steps = {0.5, 2.0};
  std::vector<double> additive_steps = {0.05, -0.05};
  std::uint64_t seed = 42;
};

struct CoordinateAscentTrace {
  std::vector<std::vector<double>> restart_maps;  // MAP after init and each accepted move
  std::vector<FeatureWeights> restart_weights;
};

namespace detail {
inline bool l1_normalize(FeatureWeights& w) {
  double norm = 0.0;
  for (double x : w) norm += std::fabs(x);
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  for (auto& x : w) x /= norm;
  return true;
}
}  // namespace detail

/// Linear model trained by cyclic coordinate search: for each feature in turn, try
/// scaling its weight by each multiplicative step and shifting it by each additive
/// step, renormalise to unit L1 norm, and keep the best candidate if MAP improves.
/// Sweeps stop when a full pass makes no move. Restart 0 starts from uniform
/// weights, later restarts from seeded random weights; the best restart wins
/// (lowest index on ties).
inline LtrModel train_coordinate_ascent(std::span<const TrainingInstance> data,
                                        const CoordinateAscentOptions& opts = {},
                                        CoordinateAscentTrace* trace = nullptr) {
  if (opts.restarts < 1) throw ConfigError("Coordinate Ascent needs at least one restart");
  if (data.empty()) throw Error("Coordinate Ascent: empty training set");

  LtrModel best;
  best.kind = LtrKind::coordinate_ascent;
  best.training_map = -1.0;
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    FeatureWeights w = uniform_weights();
    if (r > 0) {
      SplitMix64 rng(opts.seed + r);
      for (auto& x : w) x = rng.uniform();
      if (!detail::l1_normalize(w)) w = uniform_weights();
    }
    double cur = detail::training_map(data, w);
    std::vector<double> maps{cur};
    for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      bool moved = false;
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        std::vector<double> values;
        for (double m : opts.multiplicative_steps) values.push_back(w[f] * m);
        for (double a : opts.additive_steps) values.push_back(w[f] + a);
        std::optional<FeatureWeights> pick;
        double pick_map = cur;
        for (double v : values) {
          FeatureWeights cand = w;
          cand[f] = v;
          if (!detail::l1_normalize(cand)) continue;
          double m = detail::training_map(data, cand);
          if (m > pick_map + 1e-12) {
            pick = cand;
            pick_map = m;
          }
        }
        if (pick) {
          w = *pick;
          cur = pick_map;
          maps.push_back(cur);
          moved = true;
        }
      }
      if (!moved) break;
    }
    if (trace) {
      trace->restart_maps.push_back(maps);
      trace->restart_weights.push_back(w);
    }
    if (cur > best.training_map) {
      best.weights = w;
      best.training_map = cur;
    }
  }
  return best;
}

}  // namespace morphotrans
