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

// JSON Lines records exchanged between pipeline stages. Every record carries
// `schema_version` and `type`; candidates, features and labels round-trip.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "morphotrans/errors.hpp"
#include "morphotrans/generator.hpp"
#include "morphotrans/ltr.hpp"
#include "morphotrans/ranker.hpp"
#include "morphotrans/segmenter.hpp"

namespace morphotrans::records {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json morpheme_json(const Morpheme& m) { return {{"form", m.form}, {"kind", std::string(to_string(m.kind))}}; }

inline Morpheme morpheme_from(const json& j) { return Morpheme(j.at("form").get<std::string>(), parse_kind(j.at("kind").get<std::string>())); }

inline json decompositions_json(const std::vector<Decomposition>& ds) {
  json out = json::array();
  for (const auto& d : ds) {
    json comps = json::array();
    for (const auto& m : d.components) comps.push_back(morpheme_json(m));
    out.push_back(comps);
  }
  return out;
}

inline std::vector<Decomposition> decompositions_from(const json& j, const std::string& term) {
  std::vector<Decomposition> out;
  for (const auto& comps : j) {
    Decomposition d;
    d.term = term;
    for (const auto& m : comps) d.components.push_back(morpheme_from(m));
    out.push_back(std::move(d));
  }
  return out;
}

inline json decomposition_record(const std::string& term, const std::vector<Decomposition>& ds) {
  return {{"schema_version", kSchemaVersion}, {"type", "decomposition"}, {"term", term}, {"decompositions", decompositions_json(ds)}};
}

inline json candidate_json(const CandidateTranslation& c) {
  json j;
  j["key"] = c.key();
  json pairs = json::array();
  for (const auto& [l, p] : c.pairs) pairs.push_back({l, p});
  j["pairs"] = pairs;
  j["target_words"] = c.target_words;
  json comps = json::array();
  for (const auto& ct : c.components)
    comps.push_back({{"form", ct.form}, {"kind", std::string(to_string(ct.kind))}, {"origin_class", ct.origin_class}});
  j["components"] = comps;
  j["provenance"] = c.component_provenance;
  json spans = json::array();
  for (const auto& s : c.match_positions) spans.push_back({s.begin, s.end});
  j["matches"] = spans;
  j["surfaces"] = c.surfaces;
  j["content_lemmas"] = c.content_lemmas;
  j["fertile"] = c.fertile;
  return j;
}

inline CandidateTranslation candidate_from(const json& j, const std::string& source_term) {
  CandidateTranslation c;
  c.source_term = source_term;
  for (const auto& p : j.at("pairs")) c.pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  c.target_words = j.at("target_words").get<std::vector<std::string>>();
  for (const auto& ct : j.at("components")) {
    ComponentTranslation t;
    t.form = ct.at("form").get<std::string>();
    t.kind = parse_kind(ct.at("kind").get<std::string>());
    t.origin_class = ct.at("origin_class").get<int>();
    if (!valid_origin_class(t.origin_class)) throw ParseError("origin class out of range");
    c.components.push_back(t);
  }
  c.component_provenance = j.at("provenance").get<std::vector<int>>();
  for (int p : c.component_provenance)
    if (!valid_origin_class(p)) throw ParseError("origin class out of range");
  for (const auto& s : j.at("matches")) c.match_positions.push_back({s.at(0).get<Position>(), s.at(1).get<Position>()});
  c.surfaces = j.at("surfaces").get<std::vector<std::string>>();
  c.content_lemmas = j.at("content_lemmas").get<std::vector<std::string>>();
  c.fertile = j.at("fertile").get<bool>();
  if (j.contains("key") && j["key"].get<std::string>() != c.key()) throw ParseError("candidate key does not match its pairs");
  return c;
}

inline json generation_record(const GenerationResult& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) cands.push_back(candidate_json(c));
  return {{"schema_version", kSchemaVersion},
          {"type", "candidates"},
          {"term", r.source_term},
          {"status", std::string(to_string(r.status))},
          {"truncated", r.truncated},
          {"permutation_limited", r.permutation_limited},
          {"tuples", r.tuples},
          {"decompositions", decompositions_json(r.decompositions)},
          {"candidates", cands}};
}

inline json features_json(const FeatureVector& f) {
  return {{"FREQ", f.freq}, {"POS", f.pos}, {"CONT", f.cont}, {"RESO", f.reso}, {"COMBI", f.combi}};
}

inline FeatureVector features_from(const json& j) {
  FeatureVector f;
  f.freq = j.at("FREQ").get<double>();
  f.pos = j.at("POS").get<double>();
  f.cont = j.at("CONT").get<double>();
  f.reso = j.at("RESO").get<double>();
  f.combi = j.at("COMBI").get<double>();
  return f;
}

inline json ranked_record(const RankedList& l) {
  json items = json::array();
  for (std::size_t i = 0; i < l.items.size(); ++i) {
    const auto& it = l.items[i];
    json j = {{"rank", i + 1},
              {"score", it.score},
              {"features", features_json(it.features)},
              {"candidate", candidate_json(it.candidate)}};
    j["label"] = it.label ? json(std::string(to_string(*it.label))) : json(nullptr);
    items.push_back(j);
  }
  return {{"schema_version", kSchemaVersion},
          {"type", "ranked"},
          {"term", l.source_term},
          {"source_pos", l.source_pos},
          {"method", l.ranking_method},
          {"items", items}};
}

inline void check_header(const json& j, const char* type) {
  if (!j.is_object()) throw ParseError("record is not a JSON object");
  if (j.value("schema_version", 0) != kSchemaVersion)
    throw ParseError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  if (j.value("type", std::string()) != type) throw ParseError(std::string("expected a '") + type + "' record");
}

/// A candidates record as an unranked list with zero features.
inline RankedList list_from_generation(const json& j) {
  check_header(j, "candidates");
  RankedList l;
  l.source_term = j.at("term").get<std::string>();
  for (const auto& c : j.at("candidates")) l.items.push_back({candidate_from(c, l.source_term), {}, std::nullopt, 0.0});
  return l;
}

inline RankedList ranked_from(const json& j) {
  check_header(j, "ranked");
  RankedList l;
  l.source_term = j.at("term").get<std::string>();
  l.source_pos = j.value("source_pos", std::string());
  l.ranking_method = j.value("method", std::string());
  for (const auto& it : j.at("items")) {
    RankedItem item;
    item.candidate = candidate_from(it.at("candidate"), l.source_term);
    item.features = features_from(it.at("features"));
    item.score = it.value("score", 0.0);
    if (it.contains("label") && !it["label"].is_null()) item.label = parse_label(it["label"].get<std::string>());
    l.items.push_back(std::move(item));
  }
  return l;
}

/// Parses every non-blank line; errors carry the line number.
inline std::vector<json> read_lines(std::istream& in, const std::string& name) {
  std::vector<json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(name, lineno, e.what());
    }
  }
  return out;
}

template <class F>
inline auto parse_each(const std::vector<json>& lines, const std::string& name, F&& f) {
  std::vector<decltype(f(lines.front()))> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(f(lines[i]));
    } catch (const json::exception& e) {
      throw ParseError(name, i + 1, e.what());
    } catch (const ParseError& e) {
      throw ParseError(name, i + 1, e.what());
    }
  }
  return out;
}

inline void write_line(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

}  // namespace morphotrans::records
