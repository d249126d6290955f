#!/usr/bin/env python3
# Copyright 2026 The morphotrans Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the synthetic EN->FR fixture used by the tests and the golden run.

Terms are bound morpheme + adjective base ("cytotoxic"). Each term has a fused
correct translation ("cytotoxique"), sometimes a fertile one ("toxique pour les
cellules"), and distractors reached through target synonyms, source families and
a noisy cognate list. Correct translations are more frequent, share the source
term's translated context and come from more reliable resources, but none of the
signals is perfect.

Usage: make_synthetic.py [output_dir]
"""

import json
import os
import random
import sys

SEED = 20261016

BOUND = [
    # source form, kind, fused target form, lexical target (lemma, plural surface) or None
    ("cyto", "confix", "cyto", ("cellule", "cellules")),
    ("cardio", "confix", "cardio", ("coeur", "coeurs")),
    ("hepato", "confix", "hépato", ("foie", "foies")),
    ("neuro", "confix", "neuro", ("nerf", "nerfs")),
    ("osteo", "confix", "ostéo", ("os", "os")),
    ("nephro", "confix", "néphro", ("rein", "reins")),
    ("hyper", "prefix", "hyper", None),
    ("para", "prefix", "para", None),
]

BASES = [
    # source adj, target adj, target synonym, source family noun, its translation, noisy cognate
    ("toxic", "toxique", "nocif", "toxicity", "toxicité", "toxine"),
    ("static", "statique", "immobile", "stasis", "stase", "station"),
    ("plastic", "plastique", "malléable", "plasticity", "plasticité", "plasma"),
    ("tropic", "trope", "orienté", "tropism", "tropisme", "tropique"),
    ("lytic", "lytique", "dissolvant", "lysis", "lyse", "lysine"),
    ("genetic", "génétique", "héréditaire", "genetics", "génétiques", "génome"),
    ("metric", "métrique", "mesuré", "metrics", "métriques", "mètre"),
    ("tonic", "tonique", "tonifiant", "tonicity", "tonicité", "tonalité"),
    ("pathic", "pathique", "souffrant", "pathy", "pathie", "pathos"),
    ("thermic", "thermique", "calorique", "thermy", "thermie", "thermos"),
]

SRC_STOP = ["the", "of", "and", "in", "a", "with", "to", "for", "is", "was"]
TGT_STOP = ["le", "de", "et", "dans", "un", "avec", "pour", "à", "être", "du"]
# surface -> lemma for target stopwords used in generated text
TGT_STOP_SURF = {"les": "le", "la": "le", "le": "le", "de": "de", "et": "et", "dans": "dans", "un": "un",
                 "avec": "avec", "pour": "pour", "à": "à", "est": "être", "du": "du"}

CONTEXT = 80  # context word pairs ctxNN <-> kxtNN


def ctx_src(i):
    return "ctx%02d" % i


def ctx_tgt(i):
    return "kxt%02d" % i


def main(out_dir):
    rng = random.Random(SEED)
    os.makedirs(out_dir, exist_ok=True)

    terms = []
    for b in BOUND:
        for base in BASES:
            terms.append((b, base))
    rng.shuffle(terms)
    train = terms[:45]
    evaluate = terms[45:75]

    src_sents, tgt_sents = [], []
    labels, reference = [], []

    def src_filler(k):
        out = []
        for _ in range(k):
            if rng.random() < 0.5:
                w = rng.choice(SRC_STOP)
                out.append((w, w, "DET" if w in ("the", "a") else "PREP"))
            else:
                w = ctx_src(rng.randrange(CONTEXT))
                out.append((w, w, "N"))
        return out

    def tgt_filler(k):
        out = []
        for _ in range(k):
            if rng.random() < 0.5:
                s = rng.choice(sorted(TGT_STOP_SURF))
                out.append((s, TGT_STOP_SURF[s], "DET" if TGT_STOP_SURF[s] in ("le", "un") else "PREP"))
            else:
                w = ctx_tgt(rng.randrange(CONTEXT))
                out.append((w, w, "N"))
        return out

    def sentence(core, ctx, filler, ctx_form):
        toks = [(ctx_form(c), ctx_form(c), "N") for c in ctx] + filler(rng.randint(2, 4))
        rng.shuffle(toks)
        at = rng.randint(0, len(toks))
        return toks[:at] + core + toks[at:]

    for (b, base) in terms:
        bsrc, bkind, bfused, blex = b
        adj, tadj, tsyn, fam, famt, cog = base
        term = bsrc + adj
        ctx = rng.sample(range(CONTEXT), 5)

        for _ in range(rng.randint(3, 6)):
            src_sents.append(sentence([(term, term, "ADJ")], rng.sample(ctx, 3), src_filler, ctx_src))

        fused = bfused + tadj
        correct = []
        if rng.random() < 0.88:
            for _ in range(rng.randint(3, 9)):
                used = [c for c in ctx if rng.random() < 0.7]
                tgt_sents.append(sentence([(fused, fused, "ADJ")], used, tgt_filler, ctx_tgt))
            correct.append((fused + "/ADJ", fused))
        if blex and rng.random() < 0.5:
            lemma, plural = blex
            for _ in range(rng.randint(1, 5)):
                det = rng.choice(["les", "la"])
                surf = plural if det == "les" else lemma
                core = [(tadj, tadj, "ADJ"), ("pour", "pour", "PREP"), (det, "le", "DET"), (surf, lemma, "N")]
                used = [c for c in ctx if rng.random() < 0.6]
                tgt_sents.append(sentence(core, used, tgt_filler, ctx_tgt))
            key = "%s/ADJ pour/PREP le/DET %s/N" % (tadj, lemma)
            correct.append((key, "%s pour les %s" % (tadj, plural)))

        wrong = []
        for form, pos in ((bfused + tsyn, "ADJ"), (bfused + famt, "N"), (bfused + cog, "N")):
            if rng.random() < 0.7:
                for _ in range(rng.randint(1, 6)):
                    other = rng.sample(range(CONTEXT), 3)
                    tgt_sents.append(sentence([(form, form, pos)], other, tgt_filler, ctx_tgt))
                wrong.append("%s/%s" % (form, pos))

        if (b, base) in train:
            for key, _ in correct:
                labels.append((term, key, "exact"))
            for key in wrong:
                labels.append((term, key, "wrong"))
        else:
            reference.append((term, fused))
            if blex:
                reference.append((term, "%s pour les %s" % (tadj, blex[1])))

    rng.shuffle(src_sents)
    rng.shuffle(tgt_sents)

    def write_corpus(path, sents):
        with open(path, "w", encoding="utf-8") as f:
            for s in sents:
                for tok in s:
                    f.write("\t".join(tok) + "\n")
                f.write("\n")

    write_corpus(os.path.join(out_dir, "corpus.en.tsv"), src_sents)
    write_corpus(os.path.join(out_dir, "corpus.fr.tsv"), tgt_sents)

    with open(os.path.join(out_dir, "stopwords.en.txt"), "w") as f:
        f.write("\n".join(SRC_STOP) + "\n")
    with open(os.path.join(out_dir, "stopwords.fr.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(TGT_STOP) + "\n")

    with open(os.path.join(out_dir, "morphemes.tsv"), "w", encoding="utf-8") as f:
        for bsrc, bkind, bfused, blex in BOUND:
            f.write("%s\t%s\t%s\t%s\n" % (bsrc, bfused, bkind, bkind))
            if blex:
                f.write("%s\t%s\t%s\tlexical\n" % (bsrc, blex[0], bkind))
    with open(os.path.join(out_dir, "general.tsv"), "w", encoding="utf-8") as f:
        for adj, tadj, tsyn, fam, famt, cog in BASES:
            f.write("%s\t%s\tlexical\tlexical\n" % (adj, tadj))
            f.write("%s\t%s\tlexical\tlexical\n" % (fam, famt))
        for i in range(CONTEXT):
            f.write("%s\t%s\tlexical\tlexical\n" % (ctx_src(i), ctx_tgt(i)))
    with open(os.path.join(out_dir, "cognates.tsv"), "w", encoding="utf-8") as f:
        for adj, tadj, tsyn, fam, famt, cog in BASES:
            f.write("%s\t%s\tlexical\tlexical\n" % (adj, cog))
    with open(os.path.join(out_dir, "synonyms.fr.tsv"), "w", encoding="utf-8") as f:
        for adj, tadj, tsyn, fam, famt, cog in BASES:
            f.write("%s\t%s\n" % (tadj, tsyn))
    with open(os.path.join(out_dir, "families.en.txt"), "w") as f:
        for adj, tadj, tsyn, fam, famt, cog in BASES:
            f.write("%s %s\n" % (adj, fam))
    with open(os.path.join(out_dir, "phrases.tsv"), "w", encoding="utf-8") as f:
        rows = [("ADJ", "ADJ", 0.6), ("ADJ", "ADJ PREP DET N", 0.25), ("ADJ", "N", 0.1), ("ADJ", "N ADJ", 0.05),
                ("N", "N", 0.8), ("N", "N PREP N", 0.2)]
        for i, (ps, pt, p) in enumerate(rows):
            f.write("x%d\t%s\ty%d\t%s\t%.2f\t%.2f\n" % (i, ps, i, pt, p, p))

    manifest = {"pairs": [{
        "source": "en", "target": "fr",
        "general_dictionary": ["general.tsv"],
        "cognate_dictionary": ["cognates.tsv"],
        "morpheme_table": ["morphemes.tsv"],
        "target_synonyms": ["synonyms.fr.tsv"],
        "source_families": ["families.en.txt"],
        "phrase_table": "phrases.tsv"}]}
    with open(os.path.join(out_dir, "resources.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")

    def write_terms(path, items):
        with open(path, "w") as f:
            for (b, base) in items:
                f.write(b[0] + base[0] + "\n")

    write_terms(os.path.join(out_dir, "train_terms.txt"), train)
    with open(os.path.join(out_dir, "eval_terms.txt"), "w") as f:
        for (b, base) in evaluate:
            f.write(b[0] + base[0] + "\n")
        # no decomposition, and a decomposable term with no translation in the corpus
        f.write("xenograft\n")
        f.write("paraneurotonic\n")
    with open(os.path.join(out_dir, "train_labels.tsv"), "w", encoding="utf-8") as f:
        for row in labels:
            f.write("\t".join(row) + "\n")
    with open(os.path.join(out_dir, "reference.tsv"), "w", encoding="utf-8") as f:
        for row in reference:
            f.write("\t".join(row) + "\n")

    config = {
        "source_language": "en", "target_language": "fr",
        "source_corpus": "corpus.en.tsv", "target_corpus": "corpus.fr.tsv",
        "source_stopwords": "stopwords.en.txt", "target_stopwords": "stopwords.fr.txt",
        "resources": "resources.json",
        "generation": {"max_gap": 3, "max_permute": 4, "tuple_budget": 10000, "min_lexical_length": 3},
        "ranking": {"methods": ["RANDOM", "FREQ", "POS", "CONT", "RESO", "COMBI"],
                    "default_source_pos": "ADJ",
                    "reliability_grid": [0.0, 0.5, 1.0]},
        "ltr": {"adarank_rounds": 50, "restarts": 10},
        "evaluation": {"denominator": "terms-with-candidates"},
        "training": {"terms": "train_terms.txt", "labels": "train_labels.tsv"},
        "seed": 7,
        "threads": 1,
    }
    with open(os.path.join(out_dir, "config.json"), "w") as f:
        json.dump(config, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(os.path.abspath(__file__)), "synthetic"))
