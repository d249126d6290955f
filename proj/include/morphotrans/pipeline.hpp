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

// Run configuration and the stages behind the command-line tool. Each stage reads
// and writes files so it can be run and checked on its own.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "morphotrans/corpus.hpp"
#include "morphotrans/errors.hpp"
#include "morphotrans/evaluator.hpp"
#include "morphotrans/generator.hpp"
#include "morphotrans/ltr.hpp"
#include "morphotrans/ranker.hpp"
#include "morphotrans/records.hpp"
#include "morphotrans/resources.hpp"
#include "morphotrans/segmenter.hpp"

namespace morphotrans {

namespace fs = std::filesystem;

inline const std::vector<std::string>& default_methods() {
  static const std::vector<std::string> m = {"RANDOM", "FREQ", "POS", "CONT", "RESO", "COMBI"};
  return m;
}

struct PipelineConfig {
  fs::path base_dir;
  std::string source_language;
  std::string target_language;
  fs::path source_corpus;
  fs::path target_corpus;
  std::optional<fs::path> source_stopwords;
  std::optional<fs::path> target_stopwords;
  std::optional<std::set<std::string>> allowed_tags;
  fs::path resources;

  GenerationLimits limits;

  std::vector<std::string> methods = default_methods();
  FeatureWeights combi_weights = uniform_weights();
  std::string default_source_pos = "N";
  std::optional<fs::path> reliability_profile;
  std::vector<double> reliability_grid = default_reliability_grid();

  std::optional<fs::path> adarank_model;
  std::optional<fs::path> coordinate_ascent_model;
  AdaRankOptions adarank;
  CoordinateAscentOptions coordinate_ascent;

  TopNOptions evaluation;
  RelevanceMapping relevance;

  bool mine_cognates = false;
  double cognate_threshold = kDefaultCognateThreshold;
  bool build_families = false;
  std::optional<fs::path> source_suffix_table;
  std::optional<fs::path> target_suffix_table;

  std::optional<fs::path> training_terms;
  std::optional<fs::path> training_labels;

  std::uint64_t seed = 42;
  unsigned threads = 0;
};

namespace detail {

inline fs::path resolve_path(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

inline void require_exists(const fs::path& p, const std::string& what) {
  if (!fs::exists(p)) throw IoError(what + " not found: " + p.string());
}

inline FeatureWeights weights_from(const nlohmann::json& j) {
  FeatureWeights w{};
  for (auto it = j.begin(); it != j.end(); ++it) w[feature_index(it.key())] = it.value().get<double>();
  return w;
}

}  // namespace detail

/// Parses a run configuration. Relative paths are taken from the config's directory.
inline PipelineConfig config_from_json(const nlohmann::json& j, const fs::path& base_dir) {
  PipelineConfig c;
  c.base_dir = base_dir;
  try {
    auto path = [&](const char* key) { return detail::resolve_path(base_dir, j.at(key).get<std::string>()); };
    auto opt_path = [&](const nlohmann::json& obj, const char* key) -> std::optional<fs::path> {
      if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
      return detail::resolve_path(base_dir, obj[key].get<std::string>());
    };
    c.source_language = j.at("source_language").get<std::string>();
    c.target_language = j.at("target_language").get<std::string>();
    c.source_corpus = path("source_corpus");
    c.target_corpus = path("target_corpus");
    c.source_stopwords = opt_path(j, "source_stopwords");
    c.target_stopwords = opt_path(j, "target_stopwords");
    if (j.contains("allowed_tags")) c.allowed_tags = j["allowed_tags"].get<std::set<std::string>>();
    c.resources = path("resources");

    if (auto g = j.value("generation", nlohmann::json::object()); !g.empty()) {
      c.limits.max_gap = g.value("max_gap", c.limits.max_gap);
      c.limits.max_permute = g.value("max_permute", c.limits.max_permute);
      c.limits.tuple_budget = g.value("tuple_budget", c.limits.tuple_budget);
      c.limits.min_lexical_len = g.value("min_lexical_length", c.limits.min_lexical_len);
    }
    if (auto r = j.value("ranking", nlohmann::json::object()); !r.empty()) {
      if (r.contains("methods")) c.methods = r["methods"].get<std::vector<std::string>>();
      if (r.contains("combi_weights")) c.combi_weights = detail::weights_from(r["combi_weights"]);
      c.default_source_pos = r.value("default_source_pos", c.default_source_pos);
      c.reliability_profile = opt_path(r, "reliability_profile");
      if (r.contains("reliability_grid")) c.reliability_grid = r["reliability_grid"].get<std::vector<double>>();
    }
    if (auto l = j.value("ltr", nlohmann::json::object()); !l.empty()) {
      c.adarank_model = opt_path(l, "adarank_model");
      c.coordinate_ascent_model = opt_path(l, "coordinate_ascent_model");
      c.adarank.rounds = l.value("adarank_rounds", c.adarank.rounds);
      c.adarank.max_consecutive = l.value("adarank_max_consecutive", c.adarank.max_consecutive);
      c.coordinate_ascent.restarts = l.value("restarts", c.coordinate_ascent.restarts);
      c.coordinate_ascent.max_sweeps = l.value("max_sweeps", c.coordinate_ascent.max_sweeps);
    }
    if (auto e = j.value("evaluation", nlohmann::json::object()); !e.empty()) {
      c.evaluation.denominator = parse_denominator(e.value("denominator", std::string("terms-with-candidates")));
      c.evaluation.label_overlay = e.value("label_overlay", false);
      c.relevance.include_acceptable = e.value("include_acceptable", false);
    }
    if (auto g = j.value("cognates", nlohmann::json::object()); !g.empty()) {
      c.mine_cognates = g.value("mine", false);
      c.cognate_threshold = g.value("threshold", c.cognate_threshold);
    }
    if (auto f = j.value("families", nlohmann::json::object()); !f.empty()) {
      c.build_families = f.value("build", false);
      c.source_suffix_table = opt_path(f, "source_suffix_table");
      c.target_suffix_table = opt_path(f, "target_suffix_table");
    }
    if (auto t = j.value("training", nlohmann::json::object()); !t.empty()) {
      c.training_terms = opt_path(t, "terms");
      c.training_labels = opt_path(t, "labels");
      if (c.training_terms.has_value() != c.training_labels.has_value())
        throw ConfigError("training needs both 'terms' and 'labels'");
    }
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate_weights(c.combi_weights);
  if (c.limits.max_permute < 1) throw ConfigError("config: max_permute must be >= 1");
  return c;
}

inline PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return config_from_json(j, fs::absolute(path).parent_path());
}

/// One term per line; blank lines and '#' comments skipped.
inline std::vector<std::string> read_terms(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open terms file: " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (!t.empty() && t.front() != '#') out.emplace_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reliability profile files: {"1": r1, ..., "8": r8}

inline nlohmann::json profile_json(const ReliabilityProfile& p) {
  nlohmann::json j = nlohmann::json::object();
  for (int c = 1; c <= kOriginClassCount; ++c) j[std::to_string(c)] = p(c);
  return j;
}

inline ReliabilityProfile profile_from_json(const nlohmann::json& j) {
  ReliabilityProfile p;
  for (int c = 1; c <= kOriginClassCount; ++c) {
    auto key = std::to_string(c);
    if (!j.contains(key)) throw ParseError("reliability profile lacks class " + key);
    double v = j[key].get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw ParseError("reliability values must lie in [0,1]");
    p.rel[static_cast<std::size_t>(c - 1)] = v;
  }
  return p;
}

inline ReliabilityProfile read_profile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reliability profile: " + path.string());
  try {
    return profile_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline LtrModel read_model(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model: " + path.string());
  try {
    return model_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_json_file(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Workspace: corpora and resources loaded once per command

struct GenerationSummary {
  std::size_t terms = 0;
  std::size_t with_translation = 0;
  std::size_t candidates = 0;

  std::size_t without_translation() const { return terms - with_translation; }
  double mean_candidates() const {
    return with_translation ? static_cast<double>(candidates) / static_cast<double>(with_translation) : 0.0;
  }
  std::string line() const {
    return std::to_string(terms) + " terms, " + std::to_string(without_translation()) + " with no translation, " +
           std::to_string(with_translation) + " with at least one translation, " +
           format_fixed(mean_candidates(), 2) + " candidates per translated term";
  }
};

class Workspace {
 public:
  explicit Workspace(PipelineConfig config) : config_(std::move(config)) {
    detail::require_exists(config_.source_corpus, "source corpus");
    detail::require_exists(config_.target_corpus, "target corpus");
    detail::require_exists(config_.resources, "resource manifest");
    src_ = load_corpus(config_.source_corpus, config_.source_language, config_.source_stopwords, config_.allowed_tags);
    tgt_ = load_corpus(config_.target_corpus, config_.target_language, config_.target_stopwords, config_.allowed_tags);
    bank_ = load_resources(config_.resources, config_.source_language, config_.target_language);
    if (config_.mine_cognates) {
      for (const auto& e : mine_cognates(*src_, *tgt_, config_.cognate_threshold))
        for (const auto& [t, k] : e.targets)
          bank_.add_row(ResourceRole::cognate_dictionary, e.source.form, MorphemeKind::lexical, t, k);
    }
    if (config_.build_families) {
      add_families(Side::source, *src_, bank_.dictionary_sources(), config_.source_suffix_table);
      add_families(Side::target, *tgt_, bank_.dictionary_targets(), config_.target_suffix_table);
    }
    profile_ = config_.reliability_profile ? read_profile(*config_.reliability_profile) : ReliabilityProfile::uniform(1.0);
  }

  const PipelineConfig& config() const { return config_; }
  PipelineConfig& config() { return config_; }
  const AnnotatedCorpus& source_corpus() const { return *src_; }
  const AnnotatedCorpus& target_corpus() const { return *tgt_; }
  const ResourceBank& bank() const { return bank_; }
  const ReliabilityProfile& profile() const { return profile_; }
  void set_profile(const ReliabilityProfile& p) { profile_ = p; }

  std::vector<Decomposition> decompose_term(const std::string& term) const {
    return decompose(term, bank_.inventories(), config_.limits.min_lexical_len, config_.source_language);
  }

  GenerationResult generate_term(const std::string& term) const { return generate(term, bank_, *tgt_, config_.limits); }

  /// POS pattern of the source term in the source corpus, else the configured default.
  std::string source_pos(const std::string& term) const {
    std::vector<std::string> tags;
    for (const auto& w : text::split_ws(term)) {
      auto p = src_->dominant_pos(text::to_lower(w));
      if (!p) return config_.default_source_pos;
      tags.push_back(*p);
    }
    return tags.empty() ? config_.default_source_pos : pos_key(tags);
  }

  /// Unranked list with all features computed under the current profile.
  RankedList feature_list(RankedList list, std::vector<std::string>* diagnostics = nullptr) const {
    list.source_pos = source_pos(list.source_term);
    list.ranking_method.clear();
    FeatureContext ctx{src_.get(), tgt_.get(), &bank_, profile_, config_.combi_weights};
    compute_features(list, ctx, diagnostics);
    sort_tie_break(list.items);
    return list;
  }

  RankedList feature_list(const GenerationResult& r, std::vector<std::string>* diagnostics = nullptr) const {
    RankedList l;
    l.source_term = r.source_term;
    for (const auto& c : r.candidates) l.items.push_back({c, {}, std::nullopt, 0.0});
    return feature_list(std::move(l), diagnostics);
  }

 private:
  static std::unique_ptr<AnnotatedCorpus> load_corpus(const fs::path& path, const std::string& lang,
                                                      const std::optional<fs::path>& stop,
                                                      const std::optional<std::set<std::string>>& tags = std::nullopt) {
    std::set<Lemma> stopwords;
    if (stop) stopwords = read_stopwords(stop->string());
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus: " + path.string());
    return std::make_unique<AnnotatedCorpus>(ingest_corpus(in, path.string(), lang, std::move(stopwords), tags));
  }

  void add_families(Side side, const AnnotatedCorpus& corpus, const std::set<Lemma>& dict,
                    const std::optional<fs::path>& table_path) {
    std::optional<SuffixStripTable> table;
    if (table_path) {
      std::ifstream in(*table_path);
      if (!in) throw IoError("cannot open suffix table: " + table_path->string());
      table = SuffixStripTable::read(in);
    }
    for (const auto& fam : build_family_sets(corpus, dict, table)) bank_.add_family(side, fam.members);
  }

  PipelineConfig config_;
  std::unique_ptr<AnnotatedCorpus> src_;
  std::unique_ptr<AnnotatedCorpus> tgt_;
  ResourceBank bank_;
  ReliabilityProfile profile_;
};

// ---------------------------------------------------------------------------
// Ranking by configured method name

/// Models available to "LTR-AdaRank" / "LTR-CoordinateAscent" methods.
struct ModelSet {
  std::optional<LtrModel> adarank;
  std::optional<LtrModel> coordinate_ascent;
};

inline std::string method_name(LtrKind k) { return "LTR-" + std::string(to_string(k)); }

/// Ranks a list by a method name: a base method, "LTR" with an explicit model, or
/// "LTR-AdaRank" / "LTR-CoordinateAscent".
inline RankedList rank_by_name(const RankedList& list, const std::string& method, const ModelSet& models,
                               std::uint64_t seed) {
  if (method.rfind("LTR-", 0) == 0) {
    auto kind = parse_ltr_kind(method.substr(4));
    const auto& m = kind == LtrKind::adarank ? models.adarank : models.coordinate_ascent;
    if (!m) throw ConfigError("method " + method + " needs a trained model");
    auto out = apply_model(*m, list);
    out.ranking_method = method;
    return out;
  }
  auto m = parse_method(method);
  RankOptions opts;
  opts.seed = seed;
  if (m == RankingMethod::ltr) {
    const auto& model = models.coordinate_ascent ? models.coordinate_ascent : models.adarank;
    if (!model) throw ConfigError("method LTR needs a model");
    opts.model_weights = model->weights;
  }
  return rank(list, m, opts);
}

inline ModelSet configured_models(const PipelineConfig& c) {
  ModelSet m;
  if (c.adarank_model && fs::exists(*c.adarank_model)) m.adarank = read_model(*c.adarank_model);
  if (c.coordinate_ascent_model && fs::exists(*c.coordinate_ascent_model))
    m.coordinate_ascent = read_model(*c.coordinate_ascent_model);
  return m;
}

// ---------------------------------------------------------------------------
// Training

struct TrainingOutcome {
  TuningResult tuning;
  LtrModel adarank;
  LtrModel coordinate_ascent;
  std::size_t lists = 0;
  std::size_t dropped_degenerate = 0;
  std::size_t dropped_no_relevant = 0;
};

/// Labelled feature lists for the training terms under the workspace's current profile.
inline std::vector<RankedList> labelled_lists(const Workspace& ws, const std::vector<std::string>& terms,
                                              const LabelTable& labels) {
  std::vector<RankedList> lists;
  for (const auto& t : terms) lists.push_back(ws.feature_list(ws.generate_term(t)));
  attach_labels(lists, labels);
  return lists;
}

/// Tunes the reliability profile on the labelled lists, installs it in the
/// workspace, recomputes features and trains both LTR models.
inline TrainingOutcome train_all(Workspace& ws, const std::vector<std::string>& terms, const LabelTable& labels) {
  const auto& c = ws.config();
  TrainingOutcome out;
  auto lists = labelled_lists(ws, terms, labels);
  out.tuning = tune_reliability(lists, c.reliability_grid, c.relevance, c.threads);
  ws.set_profile(out.tuning.profile);
  lists = labelled_lists(ws, terms, labels);
  auto set = make_training_set(lists, c.relevance);
  out.lists = set.instances.size();
  out.dropped_degenerate = set.dropped_degenerate;
  out.dropped_no_relevant = set.dropped_no_relevant;
  if (set.instances.empty()) throw Error("no usable training list (all degenerate or without a relevant item)");
  out.adarank = train_adarank(set.instances, c.adarank);
  out.coordinate_ascent = train_coordinate_ascent(set.instances, [&] {
    auto o = c.coordinate_ascent;
    o.seed = c.seed;
    return o;
  }());
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

/// Report over lists grouped by method, in the given method order.
inline EvaluationReport build_report(const std::vector<std::pair<std::string, std::vector<RankedList>>>& by_method,
                                     const ReferenceLexicon& ref, const TopNOptions& opts) {
  if (by_method.empty()) throw Error("nothing to evaluate");
  EvaluationReport r;
  fill_counts(r, by_method.front().second, ref, opts);
  for (const auto& [method, lists] : by_method) r.per_method.push_back(evaluate_method(method, lists, ref, opts));
  return r;
}

// ---------------------------------------------------------------------------
// Full run

struct FullRunResult {
  EvaluationReport report;
  GenerationSummary summary;
  std::optional<TrainingOutcome> training;
};

inline void write_lines(const fs::path& path, const std::vector<nlohmann::json>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& r : records) records::write_line(out, r);
}

/// decompose -> generate -> features -> (tune, train) -> rank by every method ->
/// evaluate. Every intermediate is written to `out_dir`.
inline FullRunResult full_run(Workspace& ws, const std::vector<std::string>& terms, const ReferenceLexicon& ref,
                              const fs::path& out_dir) {
  const auto& c = ws.config();
  fs::create_directories(out_dir);
  FullRunResult result;

  std::vector<std::string> methods = c.methods;
  ModelSet models;
  if (c.training_terms) {
    auto train_terms = read_terms(*c.training_terms);
    auto labels = load_labels(c.training_labels->string());
    auto t = train_all(ws, train_terms, labels);
    write_json_file(out_dir / "reso_profile.json", profile_json(t.tuning.profile));
    write_json_file(out_dir / "model_adarank.json", to_json(t.adarank));
    write_json_file(out_dir / "model_coordinate_ascent.json", to_json(t.coordinate_ascent));
    models.adarank = t.adarank;
    models.coordinate_ascent = t.coordinate_ascent;
    for (auto k : {LtrKind::adarank, LtrKind::coordinate_ascent})
      if (std::find(methods.begin(), methods.end(), method_name(k)) == methods.end()) methods.push_back(method_name(k));
    result.training = std::move(t);
  } else {
    models = configured_models(c);
  }

  std::vector<nlohmann::json> decomp, cands, feats;
  std::vector<RankedList> lists;
  for (const auto& term : terms) {
    auto g = ws.generate_term(term);
    decomp.push_back(records::decomposition_record(term, g.decompositions));
    cands.push_back(records::generation_record(g));
    ++result.summary.terms;
    if (!g.candidates.empty()) {
      ++result.summary.with_translation;
      result.summary.candidates += g.candidates.size();
    }
    auto l = ws.feature_list(g);
    feats.push_back(records::ranked_record(l));
    lists.push_back(std::move(l));
  }
  write_lines(out_dir / "decompositions.jsonl", decomp);
  write_lines(out_dir / "candidates.jsonl", cands);
  write_lines(out_dir / "features.jsonl", feats);

  std::vector<std::pair<std::string, std::vector<RankedList>>> by_method;
  fs::create_directories(out_dir / "ranked");
  for (const auto& m : methods) {
    std::vector<RankedList> ranked;
    std::vector<nlohmann::json> recs;
    for (const auto& l : lists) {
      ranked.push_back(rank_by_name(l, m, models, c.seed));
      recs.push_back(records::ranked_record(ranked.back()));
    }
    write_lines(out_dir / "ranked" / (m + ".jsonl"), recs);
    by_method.emplace_back(m, std::move(ranked));
  }
  result.report = build_report(by_method, ref, c.evaluation);
  write_json_file(out_dir / "report.json", to_json(result.report));
  std::ofstream txt(out_dir / "report.txt");
  txt << render_table(result.report);
  return result;
}

}  // namespace morphotrans
