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


// morphotrans: compositional translation of morphologically complex terms.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphotrans/morphotrans.hpp"

namespace mt = morphotrans;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Output stream that is either a file or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw mt::IoError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mt::IoError("cannot open " + path);
  return mt::records::read_lines(in, path);
}

mt::PipelineConfig config_with_overrides(const std::string& path, const std::optional<std::uint64_t>& seed) {
  auto c = mt::load_config(path);
  if (seed) c.seed = *seed;
  return c;
}

std::set<std::string> read_set(const std::string& path) {
  if (path.empty()) return {};
  auto v = mt::read_terms(path);
  return {v.begin(), v.end()};
}

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_decompose(const Common& o, const std::string& terms) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  Output out(o.out);
  for (const auto& t : mt::read_terms(terms)) mt::records::write_line(out.get(), mt::records::decomposition_record(t, ws.decompose_term(t)));
  return 0;
}

int cmd_generate(const Common& o, const std::string& terms) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  Output out(o.out);
  mt::GenerationSummary summary;
  for (const auto& t : mt::read_terms(terms)) {
    auto r = ws.generate_term(t);
    ++summary.terms;
    if (!r.candidates.empty()) {
      ++summary.with_translation;
      summary.candidates += r.candidates.size();
    }
    mt::records::write_line(out.get(), mt::records::generation_record(r));
  }
  std::cerr << summary.line() << "\n";
  return 0;
}

/// Candidate or ranked records to feature lists; candidates get features computed.
std::vector<mt::RankedList> lists_from_records(const mt::Workspace& ws, const std::string& path,
                                               std::vector<std::string>* diags) {
  auto lines = read_jsonl(path);
  return mt::records::parse_each(lines, path, [&](const json& j) {
    if (j.value("type", std::string()) == "ranked") return mt::records::ranked_from(j);
    return ws.feature_list(mt::records::list_from_generation(j), diags);
  });
}

int cmd_rank(const Common& o, const std::string& candidates, const std::string& method, const std::string& model,
             const std::string& labels) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  mt::ModelSet models = mt::configured_models(ws.config());
  if (!model.empty()) {
    auto m = mt::read_model(model);
    (m.kind == mt::LtrKind::adarank ? models.adarank : models.coordinate_ascent) = m;
  }
  auto upper = method;
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "LTR" && model.empty()) throw mt::ConfigError("method LTR requires --model");
  std::vector<std::string> diags;
  auto lists = lists_from_records(ws, candidates, &diags);
  if (!labels.empty()) mt::attach_labels(lists, mt::load_labels(labels));
  Output out(o.out);
  for (const auto& l : lists) mt::records::write_line(out.get(), mt::records::ranked_record(mt::rank_by_name(l, method, models, ws.config().seed)));
  for (const auto& d : diags) std::cerr << "warning: " << d << "\n";
  return 0;
}

int cmd_tune(const Common& o, const std::string& terms, const std::string& labels, const std::vector<double>& grid) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  auto lists = mt::labelled_lists(ws, mt::read_terms(terms), mt::load_labels(labels));
  auto g = grid.empty() ? ws.config().reliability_grid : grid;
  auto r = mt::tune_reliability(lists, g, ws.config().relevance, ws.config().threads);
  Output out(o.out);
  out.get() << mt::profile_json(r.profile).dump(2) << "\n";
  std::cerr << r.profiles_evaluated << " profiles, " << r.lists_used << " lists used, " << r.lists_excluded
            << " without a relevant item, MAP " << mt::format_fixed(r.map, 4) << "\n";
  return 0;
}

int cmd_train(const Common& o, const std::string& terms, const std::string& labels, const std::string& kind) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  auto lists = mt::labelled_lists(ws, mt::read_terms(terms), mt::load_labels(labels));
  auto set = mt::make_training_set(lists, ws.config().relevance);
  std::cerr << set.instances.size() << " training lists, " << set.dropped_degenerate << " degenerate, "
            << set.dropped_no_relevant << " without a relevant item\n";
  if (set.instances.empty()) throw mt::Error("no usable training list");
  mt::LtrModel m;
  if (mt::parse_ltr_kind(kind) == mt::LtrKind::adarank) {
    m = mt::train_adarank(set.instances, ws.config().adarank);
  } else {
    auto opts = ws.config().coordinate_ascent;
    opts.seed = ws.config().seed;
    m = mt::train_coordinate_ascent(set.instances, opts);
  }
  Output out(o.out);
  out.get() << mt::to_json(m).dump(2) << "\n";
  return 0;
}

int cmd_evaluate(const std::vector<std::string>& ranked, const std::string& reference, const std::string& denominator,
                 bool overlay, const std::string& json_out, const std::string& out_path) {
  auto ref = mt::load_reference(reference);
  mt::TopNOptions opts;
  opts.denominator = mt::parse_denominator(denominator);
  opts.label_overlay = overlay;
  std::vector<std::pair<std::string, std::vector<mt::RankedList>>> by_method;
  std::map<std::string, std::size_t> slot;
  for (const auto& path : ranked) {
    auto lines = read_jsonl(path);
    if (lines.empty()) throw mt::ParseError("empty ranked file: " + path);
    for (auto& l : mt::records::parse_each(lines, path, mt::records::ranked_from)) {
      auto [it, fresh] = slot.emplace(l.ranking_method, by_method.size());
      if (fresh) by_method.emplace_back(l.ranking_method, std::vector<mt::RankedList>{});
      by_method[it->second].second.push_back(std::move(l));
    }
  }
  auto report = mt::build_report(by_method, ref, opts);
  if (!json_out.empty()) {
    std::ofstream j(json_out);
    if (!j) throw mt::IoError("cannot write " + json_out);
    j << mt::to_json(report).dump(2) << "\n";
  }
  Output out(out_path);
  out.get() << mt::render_table(report);
  return 0;
}

int cmd_comparability(const Common& o) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  auto dict = mt::dictionary_pairs(ws.bank());
  auto r = mt::comparability(ws.source_corpus(), ws.target_corpus(), dict);
  Output out(o.out);
  out.get() << json{{"comparability", r.value},
                    {"source_to_target", r.source_to_target},
                    {"target_to_source", r.target_to_source},
                    {"source_covered", r.source_covered},
                    {"target_covered", r.target_covered}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_bootstrap(const Common& o, const std::string& seeds_path, const std::string& accepted,
                  const std::string& rejected, const std::string& splits_path) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  std::set<mt::Morpheme> seeds;
  for (const auto& s : mt::read_terms(seeds_path)) seeds.insert(mt::Morpheme::from_notation(s, ws.config().source_language));
  std::map<std::string, std::vector<mt::Morpheme>> splits;
  if (!splits_path.empty()) {
    std::ifstream in(splits_path);
    if (!in) throw mt::IoError("cannot open " + splits_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (mt::text::trim(line).empty() || line.front() == '#') continue;
      auto f = mt::text::split(line, '\t');
      if (f.size() != 2) throw mt::ParseError(splits_path, lineno, "expected term<TAB>morphemes");
      auto& v = splits[std::string(mt::text::trim(f[0]))];
      for (const auto& m : mt::text::split_ws(f[1])) v.push_back(mt::Morpheme::from_notation(m));
    }
  }
  auto r = mt::bootstrap_source_terms(ws.source_corpus(), seeds, read_set(accepted), read_set(rejected), splits);
  json nm = json::array();
  for (const auto& m : r.new_morphemes) nm.push_back(m.notation());
  Output out(o.out);
  out.get() << json{{"candidates", r.candidates}, {"new_morphemes", nm}}.dump(2) << "\n";
  return 0;
}

int cmd_full_run(const Common& o, const std::string& terms, const std::string& reference, const std::string& out_dir) {
  mt::Workspace ws(config_with_overrides(o.config, o.seed));
  auto r = mt::full_run(ws, mt::read_terms(terms), mt::load_reference(reference), out_dir);
  std::cerr << r.summary.line() << "\n";
  if (r.training)
    std::cerr << "trained on " << r.training->lists << " lists; RESO MAP " << mt::format_fixed(r.training->tuning.map, 4)
              << ", AdaRank MAP " << mt::format_fixed(r.training->adarank.training_map, 4)
              << ", Coordinate Ascent MAP " << mt::format_fixed(r.training->coordinate_ascent.training_map, 4) << "\n";
  std::cout << mt::render_table(r.report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compositional translation of morphologically complex terms"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool need_config = true) {
    auto* opt = sub->add_option("-c,--config", common.config, "run configuration (JSON)");
    if (need_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", common.out, "output file (default stdout)");
    sub->add_option("--seed", common.seed, "override the configured seed");
  };

  std::string terms, labels, candidates, method, model, reference, kind = "coordinate-ascent", out_dir = "run";
  std::string denominator = "terms-with-candidates", json_out, seeds, accepted, rejected, splits;
  std::vector<std::string> ranked;
  std::vector<double> grid;
  bool overlay = false;

  auto* dec = app.add_subcommand("decompose", "split terms into morphemes (JSON Lines)");
  add_common(dec);
  dec->add_option("terms", terms, "terms file, one per line")->required();

  auto* gen = app.add_subcommand("generate", "generate candidate translations (JSON Lines)");
  add_common(gen);
  gen->add_option("terms", terms, "terms file, one per line")->required();

  auto* rk = app.add_subcommand("rank", "compute features and rank candidates");
  add_common(rk);
  rk->add_option("candidates", candidates, "candidates or ranked JSON Lines")->required();
  rk->add_option("-m,--method", method, "RANDOM, FREQ, POS, CONT, RESO, COMBI, LTR, LTR-AdaRank, LTR-CoordinateAscent")->required();
  rk->add_option("--model", model, "LTR model (JSON)");
  rk->add_option("--labels", labels, "attach labels from a label TSV");

  auto* tune = app.add_subcommand("tune-reso", "grid-search the RESO reliability profile");
  add_common(tune);
  tune->add_option("terms", terms, "training terms")->required();
  tune->add_option("labels", labels, "label TSV")->required();
  tune->add_option("--grid", grid, "grid values (default 0,0.2,...,1)")->delimiter(',');

  auto* train = app.add_subcommand("train-ltr", "train a learning-to-rank model");
  add_common(train);
  train->add_option("terms", terms, "training terms")->required();
  train->add_option("labels", labels, "label TSV")->required();
  train->add_option("-k,--kind", kind, "adarank or coordinate-ascent");

  auto* ev = app.add_subcommand("evaluate", "TopN precision against a reference lexicon");
  add_common(ev, false);
  ev->add_option("-r,--reference", reference, "reference TSV")->required();
  ev->add_option("ranked", ranked, "ranked JSON Lines files")->required();
  ev->add_option("--denominator", denominator, "terms-with-candidates or all-terms");
  ev->add_flag("--label-overlay", overlay, "items labelled exact count as hits");
  ev->add_option("--json", json_out, "also write the report as JSON");

  auto* cmp = app.add_subcommand("comparability", "type-level corpus comparability");
  add_common(cmp);

  auto* boot = app.add_subcommand("bootstrap-terms", "extract candidate source terms from seed morphemes");
  add_common(boot);
  boot->add_option("seeds", seeds, "seed morphemes in hyphen notation, one per line")->required();
  boot->add_option("--accepted", accepted, "terms already accepted");
  boot->add_option("--rejected", rejected, "terms already rejected");
  boot->add_option("--splits", splits, "term<TAB>morphemes of accepted terms");

  auto* full = app.add_subcommand("full-run", "run every stage and write all intermediates");
  add_common(full);
  full->add_option("terms", terms, "terms file")->required();
  full->add_option("-r,--reference", reference, "reference TSV")->required();
  full->add_option("-d,--out-dir", out_dir, "directory for intermediates and the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*dec) return cmd_decompose(common, terms);
    if (*gen) return cmd_generate(common, terms);
    if (*rk) return cmd_rank(common, candidates, method, model, labels);
    if (*tune) return cmd_tune(common, terms, labels, grid);
    if (*train) return cmd_train(common, terms, labels, kind);
    if (*ev) return cmd_evaluate(ranked, reference, denominator, overlay, json_out, common.out);
    if (*cmp) return cmd_comparability(common);
    if (*boot) return cmd_bootstrap(common, seeds, accepted, rejected, splits);
    if (*full) return cmd_full_run(common, terms, reference, out_dir);
  } catch (const mt::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const mt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
