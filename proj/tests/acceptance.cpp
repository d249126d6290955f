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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "morphotrans/morphotrans.hpp"
#include "oracle/brute_generator.hpp"
#include "oracle/brute_metrics.hpp"

using namespace morphotrans;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kFormulaTolerance = 1e-9;
constexpr double kToyRuntimeLimitSeconds = 10.0;
constexpr double kFullGridLimitSeconds = 300.0;
constexpr double kCoordinateAscentMinMap = 0.99;
constexpr double kAdaRankMinMap = 0.95;
constexpr int kToyConfigurations = 25;
constexpr int kRandomProfiles = 1000;
constexpr int kRandomSeeds = 20;
constexpr int kRangeTrials = 1000;

const fs::path kFixture = MORPHOTRANS_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome generation_oracle() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t terms = 0, candidates = 0, max_tokens = 0, max_morphemes = 0;
  for (int seed = 1; seed <= kToyConfigurations; ++seed) {
    auto toy = oracle::random_toy(static_cast<std::uint64_t>(seed));
    auto bank = oracle::make_bank(toy.resources);
    auto corpus = corpus_from_string(toy.corpus_spec, "yy", toy.stopwords);
    max_tokens = std::max(max_tokens, corpus.total_tokens());
    const auto& inv = bank.inventories();
    max_morphemes = std::max(max_morphemes, inv.prefixes.size() + inv.confixes.size() + inv.suffixes.size() + inv.lexical.size());
    for (const auto& term : toy.terms) {
      auto expect = oracle::generate(toy.resources, corpus, term);
      std::map<std::string, oracle::Candidate> got;
      for (const auto& c : generate(term, bank, corpus).candidates) got[c.key()] = {c.match_count(), c.fertile};
      ++terms;
      candidates += expect.size();
      if (got != expect && o.pass) {
        o.pass = false;
        o.detail = "mismatch at toy " + std::to_string(seed) + " term " + term + "; ";
      }
    }
  }
  double secs = seconds_since(t0);
  if (max_tokens > 1000 || max_morphemes > 10) {
    o.pass = false;
    o.detail += "toy exceeds size bounds; ";
  }
  if (secs >= kToyRuntimeLimitSeconds) o.pass = false;
  o.detail += std::to_string(kToyConfigurations) + " toys, " + std::to_string(terms) + " terms, " +
              std::to_string(candidates) + " candidates, max " + std::to_string(max_tokens) + " tokens, max " +
              std::to_string(max_morphemes) + " morphemes, " + fmt(secs, 2) + " s";
  return o;
}

Outcome formula_fidelity() {
  Outcome o;
  std::size_t cases = 0;
  std::map<std::string, std::size_t> per;
  auto check = [&](const std::string& name, double got, double expect) {
    ++cases;
    ++per[name];
    if (!(std::fabs(got - expect) <= kFormulaTolerance)) {
      o.pass = false;
      o.detail += name + " case " + std::to_string(per[name]) + ": got " + fmt(got, 12) + " want " + fmt(expect, 12) + "; ";
    }
  };
  auto cv = [](std::map<std::string, double> w) {
    ContextVector v;
    v.weights = std::move(w);
    return v;
  };
  check("jaccard", weighted_jaccard(cv({{"a", 2}, {"b", 1}}), cv({{"a", 1}, {"c", 1}})), 0.25);
  check("jaccard", weighted_jaccard(cv({{"a", 2}, {"b", 1}}), cv({{"a", 2}, {"b", 1}})), 1.0);
  check("jaccard", weighted_jaccard(cv({{"a", 1}}), cv({{"b", 1}})), 0.0);
  check("jaccard", weighted_jaccard(cv({{"a", 1}}), cv({{"a", 3}})), 1.0 / 3.0);
  check("jaccard", weighted_jaccard(cv({{"a", 1}, {"b", 2}}), cv({{"a", 2}, {"b", 1}})), 0.5);
  check("jaccard", weighted_jaccard(cv({}), cv({})), 0.0);

  auto pa = [](const char* x, const char* y, double p) { return PhraseAlignment{"s", {x}, "t", {y}, p, p}; };
  auto m1 = build_pos_model(std::vector<PhraseAlignment>{pa("N", "N", 0.6), pa("N", "ADJ", 0.2)});
  check("P(y|x)", m1.probability("N", "N"), 0.75);
  check("P(y|x)", m1.probability("N", "ADJ"), 0.25);
  auto m2 = build_pos_model(std::vector<PhraseAlignment>{pa("N", "N", 0.3), pa("N", "N", 0.3), pa("N", "ADJ", 0.2)});
  check("P(y|x)", m2.probability("N", "N"), 0.75);
  check("P(y|x)", m2.probability("V", "N"), 0.0);
  auto m3 = build_pos_model(std::vector<PhraseAlignment>{pa("A", "A", 0.5), pa("A", "N", 0.3), pa("A", "V", 0.2)});
  check("P(y|x)", m3.probability("A", "N"), 0.3);
  auto m4 = build_pos_model(std::vector<PhraseAlignment>{pa("N", "N", 1.0)});
  check("P(y|x)", m4.probability("N", "N"), 1.0);

  auto prof = ReliabilityProfile::uniform(0.0);
  prof.rel = {0.8, 0.4, 1.0, 0.0, 0.5, 0.1, 0.2, 0.3};
  check("RESO", score_reso(std::vector<int>{1, 2}, prof), 0.6);
  check("RESO", score_reso(std::vector<int>{3}, prof), 1.0);
  check("RESO", score_reso(std::vector<int>{3, 4, 5}, prof), 0.5);
  check("RESO", score_reso(std::vector<int>{7, 7}, prof), 0.2);
  check("RESO", score_reso(std::vector<int>{6, 7, 8, 2}, prof), 0.25);

  auto map_of = [](std::vector<std::vector<bool>> lists) {
    std::vector<RankedList> rl;
    for (const auto& flags : lists) {
      RankedList l;
      for (std::size_t i = 0; i < flags.size(); ++i) {
        RankedItem it;
        it.candidate.pairs = {{"c" + std::to_string(i), "N"}};
        it.label = flags[i] ? Label::exact : Label::wrong;
        l.items.push_back(it);
      }
      rl.push_back(l);
    }
    return mean_average_precision(rl).map;
  };
  check("MAP", map_of({{true, false, false}}), 1.0);
  check("MAP", map_of({{false, true}}), 0.5);
  check("MAP", map_of({{true, false}, {false, true}}), 0.75);
  check("MAP", map_of({{true, false, true}}), (1.0 + 2.0 / 3.0) / 2.0);
  check("MAP", map_of({{false, true, false, true}}), 0.5);
  check("MAP", map_of({{false, false, true}}), 1.0 / 3.0);

  using V = std::vector<std::string>;
  check("kappa", cohens_kappa(V{"x", "x", "y", "y"}, V{"x", "y", "x", "y"}), 0.0);
  check("kappa", cohens_kappa(V{"x", "x", "y", "y"}, V{"x", "x", "y", "y"}), 1.0);
  check("kappa", cohens_kappa(V{"x", "x", "x", "y"}, V{"x", "x", "y", "y"}), 0.5);
  check("kappa", cohens_kappa(V{"x", "y"}, V{"y", "x"}), -1.0);
  check("kappa", cohens_kappa(V{"x", "y", "z", "x"}, V{"x", "y", "x", "z"}), 0.2);

  for (const auto& [name, n] : per)
    if (n < 5) {
      o.pass = false;
      o.detail += name + " has fewer than 5 cases; ";
    }
  o.detail += std::to_string(cases) + " cases within " + fmt(kFormulaTolerance, 9);
  return o;
}

Outcome concatenation_count() {
  Outcome o;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(std::string(1, static_cast<char>('a' + i)));
    auto cs = concatenations(l);
    std::set<std::vector<std::string>> uniq;
    for (const auto& c : cs) uniq.insert(c.elements);
    if (cs.size() != (std::size_t{1} << (n - 1)) || uniq.size() != cs.size()) {
      o.pass = false;
      o.detail += "n=" + std::to_string(n) + " gave " + std::to_string(cs.size()) + "; ";
    }
  }
  o.detail += "n = 1..6";
  return o;
}

Outcome worked_examples() {
  Outcome o;
  auto fail = [&](const std::string& why) {
    o.pass = false;
    o.detail += why + "; ";
  };

  ResourceBank bank("en", "fr");
  bank.add_row(ResourceRole::morpheme_table, "post", MorphemeKind::prefix, "post", MorphemeKind::prefix);
  bank.add_row(ResourceRole::general_dictionary, "menopause", MorphemeKind::lexical, "ménopause", MorphemeKind::lexical);
  bank.add_row(ResourceRole::morpheme_table, "cyto", MorphemeKind::confix, "cyto", MorphemeKind::confix);
  bank.add_row(ResourceRole::morpheme_table, "cyto", MorphemeKind::confix, "cellule", MorphemeKind::lexical);
  bank.add_row(ResourceRole::general_dictionary, "toxic", MorphemeKind::lexical, "toxique", MorphemeKind::lexical);

  auto ds = decompose("post-menopause", bank.inventories());
  if (ds.size() != 1 || ds[0].components.size() != 2 || ds[0].components[0].notation() != "post-" ||
      ds[0].components[1].notation() != "menopause")
    fail("post-menopause does not decompose to post- + menopause");

  auto corpus = corpus_from_string(
      "un/un/DET agent/agent/N cytotoxique/cytotoxique/ADJ | "
      "toxique/toxique/ADJ pour/pour/PREP les/le/DET cellules/cellule/N | "
      "il/il/PRO est/être/V toxique/toxique/ADJ pour/pour/PREP la/le/DET cellule/cellule/N",
      "fr", {"un", "pour", "le", "il", "être"});
  auto r = generate("cytotoxic", bank, corpus);
  const CandidateTranslation* plain = nullptr;
  const CandidateTranslation* fertile = nullptr;
  for (const auto& c : r.candidates) {
    if (c.key() == "cytotoxique/ADJ") plain = &c;
    if (c.key() == "toxique/ADJ pour/PREP le/DET cellule/N") fertile = &c;
  }
  if (!plain) fail("cytotoxique missing");
  if (plain && plain->fertile) fail("cytotoxique flagged fertile");
  if (!fertile) fail("toxique pour les cellules missing");
  if (fertile && !fertile->fertile) fail("toxique pour les cellules not flagged fertile");
  if (r.candidates.size() != 2) fail("expected 2 candidates, got " + std::to_string(r.candidates.size()));
  if (fertile && (fertile->match_count() != 2 || fertile->surfaces.size() != 2))
    fail("les/la variants not merged into one candidate");
  o.detail += "post-menopause, cytotoxic (" + std::to_string(r.candidates.size()) + " candidates), les/la dedup";
  return o;
}

std::vector<RankedList> synthetic_tuning_lists(std::uint64_t seed, std::size_t n_lists) {
  std::mt19937_64 rng(seed);
  std::vector<RankedList> out;
  for (std::size_t l = 0; l < n_lists; ++l) {
    RankedList list;
    list.source_term = "term" + std::to_string(l);
    std::size_t n = 3 + rng() % 6;
    std::size_t good = rng() % n;
    for (std::size_t i = 0; i < n; ++i) {
      RankedItem it;
      it.candidate.pairs = {{"c" + std::to_string(i), "N"}};
      for (std::size_t m = 0, nm = 1 + rng() % 3; m < nm; ++m) it.candidate.match_positions.push_back({m, m + 1});
      std::size_t k = 1 + rng() % 3;
      for (std::size_t c = 0; c < k; ++c) {
        // Relevant items lean on classes 1, 6 and 7.
        int cls = i == good && rng() % 3 != 0 ? std::array{1, 6, 7}[rng() % 3] : 1 + static_cast<int>(rng() % 8);
        it.candidate.component_provenance.push_back(cls);
      }
      it.label = i == good ? Label::exact : Label::wrong;
      list.items.push_back(std::move(it));
    }
    out.push_back(std::move(list));
  }
  return out;
}

Outcome reso_tuning() {
  Outcome o;
  auto small = synthetic_tuning_lists(11, 5);
  auto got = tune_reliability(small, {0.0, 1.0});
  auto expect = oracle::brute_tune(small, {0.0, 1.0});
  if (got.profile.rel != expect.rel || std::fabs(got.map - expect.map) > kFormulaTolerance) {
    o.pass = false;
    o.detail += "binary grid differs from brute force; ";
  }

  auto lists = synthetic_tuning_lists(12, 50);
  auto t0 = std::chrono::steady_clock::now();
  auto full = tune_reliability(lists);
  double secs = seconds_since(t0);
  if (full.profiles_evaluated != 1679616u) {
    o.pass = false;
    o.detail += "profile count " + std::to_string(full.profiles_evaluated) + "; ";
  }
  if (secs >= kFullGridLimitSeconds) o.pass = false;

  const auto& grid = default_reliability_grid();
  SplitMix64 rng(2026);
  int beaten = 0;
  for (int i = 0; i < kRandomProfiles; ++i) {
    ReliabilityProfile p;
    for (auto& v : p.rel) v = grid[rng.below(grid.size())];
    if (full.map + kFormulaTolerance >= reso_map(lists, p)) ++beaten;
  }
  if (beaten != kRandomProfiles) o.pass = false;
  o.detail += "binary grid = brute force (MAP " + fmt(got.map) + "); full grid " + std::to_string(full.profiles_evaluated) +
              " profiles in " + fmt(secs, 1) + " s, MAP " + fmt(full.map) + ", >= " + std::to_string(beaten) + "/" +
              std::to_string(kRandomProfiles) + " random profiles";
  return o;
}

std::vector<RankedList> planted_lists(std::uint64_t seed, std::size_t n_lists, const FeatureWeights& planted) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RankedList> out;
  for (std::size_t l = 0; l < n_lists; ++l) {
    RankedList list;
    list.source_term = "term" + std::to_string(l);
    std::size_t n = 4 + rng() % 7;
    for (std::size_t i = 0; i < n; ++i) {
      RankedItem it;
      it.candidate.pairs = {{"c" + std::to_string(i), "N"}};
      it.candidate.match_positions = {{0, 1}};
      it.features = {u(rng), u(rng), u(rng), u(rng)};
      list.items.push_back(std::move(it));
    }
    // Relevant: the item with the best planted score on the normalised features.
    std::vector<FeatureVector> fvs;
    for (const auto& it : list.items) fvs.push_back(it.features);
    auto norm = normalized_features(fvs);
    std::size_t best = 0;
    double best_score = -1;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t f = 0; f < kFeatureCount; ++f) s += planted[f] * norm[i][f];
      if (s > best_score) {
        best_score = s;
        best = i;
      }
    }
    for (std::size_t i = 0; i < n; ++i) list.items[i].label = i == best ? Label::exact : Label::wrong;
    out.push_back(std::move(list));
  }
  return out;
}

Outcome ltr_sanity() {
  Outcome o;
  const FeatureWeights planted = {0.55, 0.25, 0.15, 0.05};
  auto lists = planted_lists(31, 200, planted);
  auto set = make_training_set(lists);
  CoordinateAscentTrace trace;
  auto ca = train_coordinate_ascent(set.instances, {}, &trace);
  auto ada = train_adarank(set.instances);
  bool monotone = true;
  for (const auto& maps : trace.restart_maps)
    for (std::size_t i = 1; i < maps.size(); ++i) monotone = monotone && maps[i] >= maps[i - 1];
  double planted_map = detail::training_map(set.instances, planted);
  o.pass = set.instances.size() == 200 && ca.training_map >= kCoordinateAscentMinMap &&
           ada.training_map >= kAdaRankMinMap && monotone && planted_map == 1.0;
  o.detail = std::to_string(set.instances.size()) + " lists (planted MAP " + fmt(planted_map) + "), CoordinateAscent MAP " +
             fmt(ca.training_map) + ", AdaRank MAP " + fmt(ada.training_map) + ", restart traces " +
             (monotone ? "monotone" : "NOT monotone");
  return o;
}

struct FixtureRun {
  std::vector<std::pair<std::string, std::vector<RankedList>>> by_method;
  ReferenceLexicon ref;
  TopNOptions opts;
};

FixtureRun fixture_rankings(const std::vector<std::uint64_t>& random_seeds) {
  auto cfg = load_config(kFixture / "config.json");
  Workspace ws(cfg);
  auto labels = load_labels(cfg.training_labels->string());
  auto trained = train_all(ws, read_terms(*cfg.training_terms), labels);
  ModelSet models{trained.adarank, trained.coordinate_ascent};
  std::vector<RankedList> lists;
  for (const auto& term : read_terms(kFixture / "eval_terms.txt")) lists.push_back(ws.feature_list(ws.generate_term(term)));
  FixtureRun run;
  run.ref = load_reference((kFixture / "reference.tsv").string());
  run.opts = cfg.evaluation;
  auto ranked = [&](const std::string& m, std::uint64_t seed) {
    std::vector<RankedList> out;
    for (const auto& l : lists) out.push_back(rank_by_name(l, m, models, seed));
    return out;
  };
  for (auto seed : random_seeds) run.by_method.emplace_back("RANDOM#" + std::to_string(seed), ranked("RANDOM", seed));
  for (const char* m : {"FREQ", "POS", "CONT", "RESO", "COMBI", "LTR-AdaRank", "LTR-CoordinateAscent"})
    run.by_method.emplace_back(m, ranked(m, cfg.seed));
  return run;
}

Outcome method_ordering(const FixtureRun& run) {
  Outcome o;
  double random_top1 = 0;
  int seeds = 0;
  std::string others;
  for (const auto& [m, lists] : run.by_method) {
    double t1 = topn_precision(lists, run.ref, 1, run.opts);
    if (m.rfind("RANDOM#", 0) == 0) {
      random_top1 += t1;
      ++seeds;
    }
  }
  random_top1 /= seeds;
  for (const auto& [m, lists] : run.by_method) {
    if (m.rfind("RANDOM#", 0) == 0) continue;
    double t1 = topn_precision(lists, run.ref, 1, run.opts);
    if (t1 < random_top1) o.pass = false;
    others += " " + m + "=" + fmt(t1, 3);
  }
  o.detail = "RANDOM mean Top1 over " + std::to_string(seeds) + " seeds " + fmt(random_top1, 3) + ";" + others;
  return o;
}

Outcome monotonicity(const FixtureRun& run) {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& [m, lists] : run.by_method) {
    auto p = evaluate_method(m, lists, run.ref, run.opts);  // throws on a violation
    if (!(p.top1 <= p.top2 && p.top2 <= p.top3)) o.pass = false;
    ++runs;
  }

  std::size_t checked = 0, out_of_range = 0;
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0 && std::isfinite(v); };
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < kRangeTrials; ++trial) {
    // Random toy corpora, dictionary, candidates and weights.
    std::vector<std::string> vocab_s, vocab_t;
    for (int i = 0; i < 12; ++i) {
      vocab_s.push_back("s" + std::to_string(i));
      vocab_t.push_back("t" + std::to_string(i));
    }
    auto make = [&](const std::vector<std::string>& vocab, const char* lang) {
      std::string spec;
      std::size_t n = 5 + rng() % 60;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& w = vocab[rng() % vocab.size()];
        spec += w + "/" + w + "/" + (rng() % 2 ? "N" : "ADJ") + " ";
        if (rng() % 9 == 0) spec += "| ";
      }
      return corpus_from_string(spec, lang, {vocab[0]});
    };
    auto src = make(vocab_s, "en");
    auto tgt = make(vocab_t, "fr");
    ResourceBank bank("en", "fr");
    DictionaryPairs dict;
    for (int i = 0; i < 12; ++i)
      if (rng() % 2) {
        bank.add_row(ResourceRole::general_dictionary, vocab_s[i], MorphemeKind::lexical, vocab_t[rng() % 12], MorphemeKind::lexical);
      }
    dict = dictionary_pairs(bank);
    std::vector<PhraseAlignment> pt;
    for (const char* x : {"N", "ADJ"})
      for (const char* y : {"N", "ADJ", "N ADJ"}) pt.push_back({"a", {x}, "b", text::split_ws(y), u(rng), u(rng) + 0.01});
    bank.set_pos_model(build_pos_model(pt));

    try {
      auto c = comparability(src, tgt, dict);
      ++checked;
      if (!in01(c.value) || !in01(c.source_to_target) || !in01(c.target_to_source)) ++out_of_range;
    } catch (const Error&) {
      // No dictionary coverage in one direction: not a range violation.
    }

    RankedList list;
    list.source_term = vocab_s[1 + rng() % 11];
    list.source_pos = rng() % 2 ? "N" : "ADJ";
    for (int k = 0, nk = 1 + static_cast<int>(rng() % 5); k < nk; ++k) {
      std::vector<std::string> words{vocab_t[rng() % 12]};
      if (rng() % 2) words.push_back(vocab_t[rng() % 12]);
      for (auto& cand : match(words, tgt)) {
        for (std::size_t j = 0, nj = 1 + rng() % 3; j < nj; ++j) cand.component_provenance.push_back(1 + static_cast<int>(rng() % 8));
        list.items.push_back({cand, {}, std::nullopt, 0.0});
      }
    }
    FeatureContext ctx;
    ctx.src_corpus = &src;
    ctx.tgt_corpus = &tgt;
    ctx.bank = &bank;
    for (auto& v : ctx.profile.rel) v = u(rng);
    ctx.combi_weights = {u(rng), u(rng), u(rng), u(rng) + 0.01};
    double wsum = 0;
    for (double w : ctx.combi_weights) wsum += w;
    compute_features(list, ctx);
    for (const auto& it : list.items) {
      const auto& f = it.features;
      ++checked;
      if (!in01(f.freq) || !in01(f.pos) || !in01(f.cont) || !in01(f.reso) || !(f.combi >= 0.0 && f.combi <= wsum + 1e-12))
        ++out_of_range;
    }
  }
  if (out_of_range) o.pass = false;
  o.detail = std::to_string(runs) + " evaluation runs ordered; " + std::to_string(kRangeTrials) + " random trials, " +
             std::to_string(checked) + " values checked, " + std::to_string(out_of_range) + " out of range";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto golden = kFixture / "golden";
  if (!fs::exists(golden / "report.txt") || !fs::exists(golden / "report.json")) {
    o.pass = false;
    o.detail = "golden report missing";
    return o;
  }
  auto cfg = load_config(kFixture / "config.json");
  auto terms = read_terms(kFixture / "eval_terms.txt");
  auto ref = load_reference((kFixture / "reference.tsv").string());
  auto tmp = fs::temp_directory_path() / "morphotrans_acceptance";
  for (int i = 0; i < 2; ++i) {
    Workspace ws(cfg);
    auto dir = tmp / std::to_string(i);
    full_run(ws, terms, ref, dir);
    for (const char* f : {"report.txt", "report.json"})
      if (slurp(dir / f) != slurp(golden / f)) {
        o.pass = false;
        o.detail += std::string("run ") + std::to_string(i + 1) + " " + f + " differs; ";
      }
  }
  fs::remove_all(tmp);
  o.detail += "two full runs compared with golden report.txt and report.json";
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << n << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  };
  report(1, "generation oracle equivalence", generation_oracle);
  report(2, "formula fidelity", formula_fidelity);
  report(3, "concatenation count", concatenation_count);
  report(4, "worked examples", worked_examples);
  report(5, "RESO tuning", reso_tuning);
  report(6, "LTR sanity", ltr_sanity);

  std::optional<FixtureRun> run;
  std::string run_error;
  try {
    std::vector<std::uint64_t> seeds;
    for (int s = 1; s <= kRandomSeeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    run = fixture_rankings(seeds);
  } catch (const std::exception& e) {
    run_error = e.what();
  }
  auto with_run = [&](Outcome (*f)(const FixtureRun&)) {
    return [&, f]() -> Outcome {
      if (!run) return {false, "fixture run failed: " + run_error};
      return f(*run);
    };
  };
  report(7, "ranking methods beat RANDOM", with_run(method_ordering));
  report(8, "metric monotonicity and ranges", with_run(monotonicity));
  report(9, "end-to-end determinism", determinism);
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
