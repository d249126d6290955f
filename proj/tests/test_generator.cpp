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


#include <gtest/gtest.h>

#include "morphotrans/generator.hpp"
#include "oracle/brute_generator.hpp"

using namespace morphotrans;

namespace {

ResourceBank cyto_bank() {
  ResourceBank bank("en", "fr");
  bank.add_row(ResourceRole::morpheme_table, "cyto", MorphemeKind::confix, "cyto", MorphemeKind::confix);
  bank.add_row(ResourceRole::morpheme_table, "cyto", MorphemeKind::confix, "cellule", MorphemeKind::lexical);
  bank.add_row(ResourceRole::general_dictionary, "toxic", MorphemeKind::lexical, "toxique", MorphemeKind::lexical);
  return bank;
}

AnnotatedCorpus cyto_corpus() {
  return corpus_from_string(
      "un/un/D agent/agent/N cytotoxique/cytotoxique/ADJ | "
      "toxique/toxique/ADJ pour/pour/P les/le/D cellules/cellule/N | "
      "effet/effet/N cytotoxiques/cytotoxique/ADJ",
      "fr", {"un", "pour", "le"});
}

}  // namespace

TEST(Generator, CytotoxicYieldsTwoCandidates) {
  auto r = generate("cytotoxic", cyto_bank(), cyto_corpus());
  EXPECT_EQ(r.status, GenerationStatus::ok);
  ASSERT_EQ(r.candidates.size(), 2u);
  const auto& plain = r.candidates[0];
  const auto& fertile = r.candidates[1];
  EXPECT_EQ(plain.key(), "cytotoxique/ADJ");
  EXPECT_EQ(plain.match_count(), 2u);
  EXPECT_FALSE(plain.fertile);
  EXPECT_EQ(plain.component_provenance, (std::vector<int>{kConfix, kGeneralDictionary}));
  EXPECT_EQ(fertile.key(), "toxique/ADJ pour/P le/D cellule/N");
  EXPECT_TRUE(fertile.fertile);
  EXPECT_EQ(fertile.content_lemmas, (std::vector<Lemma>{"toxique", "cellule"}));
  EXPECT_EQ(render_target_form(fertile), "toxique pour les cellules");
  EXPECT_EQ(render_target_form(plain), "cytotoxique");
  EXPECT_EQ(plain.surfaces, (std::vector<std::string>{"cytotoxique", "cytotoxiques"}));
}

TEST(Generator, RecomposeFusesBoundMorphemes) {
  std::vector<ComponentTranslation> t{{"cyto", MorphemeKind::confix, kConfix},
                                      {"toxique", MorphemeKind::lexical, kGeneralDictionary},
                                      {"cellule", MorphemeKind::lexical, kGeneralDictionary}};
  auto words = recompose(t);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[0].form, "cytotoxique");
  EXPECT_EQ(words[1].form, "cellule");
}

TEST(Match, SameLemmaSequenceIsOneCandidate) {
  auto c = corpus_from_string(
      "les/le/D cellules/cellule/N toxiques/toxique/ADJ | la/le/D cellule/cellule/N toxique/toxique/ADJ", "fr",
      {"le"});
  auto out = match(std::vector<std::string>{"le", "cellule"}, c);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].match_count(), 2u);
  EXPECT_EQ(out[0].surfaces, (std::vector<std::string>{"les cellules", "la cellule"}));
}

TEST(Match, GapLimit) {
  auto three = corpus_from_string("a/a/N s/s/P s/s/P s/s/P b/b/N", "xx", {"s"});
  auto four = corpus_from_string("a/a/N s/s/P s/s/P s/s/P s/s/P b/b/N", "xx", {"s"});
  std::vector<std::string> words{"a", "b"};
  EXPECT_EQ(match(words, three).size(), 1u);
  EXPECT_TRUE(match(words, four).empty());
  EXPECT_EQ(match(words, four, 4).size(), 1u);
}

TEST(Match, ContentWordsAndSentencesBreakMatches) {
  auto c = corpus_from_string("a/a/N x/x/N b/b/N | a/a/N | b/b/N", "xx");
  EXPECT_TRUE(match(std::vector<std::string>{"a", "b"}, c).empty());
}

TEST(Permutations, Counts) {
  EXPECT_EQ(permutations(std::vector<std::string>{"a", "b"}).size(), 2u);
  auto six = permutations(std::vector<std::string>{"a", "b", "c"});
  EXPECT_EQ(six.size(), 6u);
  EXPECT_EQ(six.front(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(six.back(), (std::vector<std::string>{"c", "b", "a"}));
  EXPECT_EQ(permutations(std::vector<std::string>{"a", "b", "c", "d"}).size(), 24u);
  EXPECT_THROW(permutations(std::vector<std::string>{"a", "b", "c", "d", "e"}), LimitError);
}

TEST(Generator, Statuses) {
  auto bank = cyto_bank();
  bank.add_lexical("unknownword");
  auto corpus = cyto_corpus();
  EXPECT_EQ(generate("zzzz", bank, corpus).status, GenerationStatus::no_decomposition);
  EXPECT_EQ(generate("unknownword", bank, corpus).status, GenerationStatus::component_untranslatable);
  auto empty = corpus_from_string("rien/rien/N", "fr");
  auto r = generate("cytotoxic", bank, empty);
  EXPECT_EQ(r.status, GenerationStatus::no_corpus_match);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_THROW(render_target_form(CandidateTranslation{}), Error);
}

TEST(Generator, LoneBoundMorphemeWordIsDiscarded) {
  // "cyto" alone as a target word never becomes a candidate, even if the corpus has it.
  auto c = corpus_from_string("toxique/toxique/ADJ cyto/cyto/N", "fr");
  auto r = generate("cytotoxic", cyto_bank(), c);
  for (const auto& cand : r.candidates)
    for (const auto& [l, _] : cand.pairs) EXPECT_NE(l, "cyto");
}

TEST(Generator, LongTuplesKeepSourceOrder) {
  ResourceBank bank("en", "fr");
  const char* src[] = {"aaa", "bbb", "ccc", "ddd", "eee"};
  const char* tgt[] = {"va", "vb", "vc", "vd", "ve"};
  for (int i = 0; i < 5; ++i)
    bank.add_row(ResourceRole::general_dictionary, src[i], MorphemeKind::lexical, tgt[i], MorphemeKind::lexical);
  auto c = corpus_from_string("va/va/N vb/vb/N vc/vc/N vd/vd/N ve/ve/N | ve/ve/N vd/vd/N vc/vc/N vb/vb/N va/va/N", "fr");
  auto r = generate("aaa-bbb-ccc-ddd-eee", bank, c);
  EXPECT_TRUE(r.permutation_limited);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].key(), "va/N vb/N vc/N vd/N ve/N");
}

TEST(Generator, TupleBudgetTruncates) {
  auto r = generate("cytotoxic", cyto_bank(), cyto_corpus(), {3, 4, 1, 3});
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.tuples, 1u);
}

TEST(Generator, RandomToysMatchBruteForce) {
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto toy = oracle::random_toy(seed);
    auto bank = oracle::make_bank(toy.resources);
    auto corpus = corpus_from_string(toy.corpus_spec, "yy", toy.stopwords);
    for (const auto& term : toy.terms) {
      auto expect = oracle::generate(toy.resources, corpus, term);
      auto got = generate(term, bank, corpus);
      std::map<std::string, oracle::Candidate> as_map;
      for (const auto& c : got.candidates) as_map[c.key()] = {c.match_count(), c.fertile};
      EXPECT_EQ(as_map, expect) << "seed " << seed << " term " << term;
      compared += expect.size();
      for (const auto& c : got.candidates) {
        EXPECT_EQ(c.components.size(), c.component_provenance.size());
        for (int p : c.component_provenance) EXPECT_TRUE(valid_origin_class(p));
      }
    }
  }
  EXPECT_GT(compared, 100u);
}
