#!/usr/bin/env python3
"""Regenerates the relevance-study fixtures in this directory.

mofs/: ten articles x ten ontologies whose per-article and per-ontology
candidate and relevant counts equal the reference MOFs study tables; five raters,
thresholded at four.
inorganic/: sixty abstracts, one rater, 987 terms split 392/261/334.
"""
import csv
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

ARTICLES = ["M%d" % i for i in range(1, 11)]
ART_CAND = [17, 42, 26, 3, 36, 41, 27, 23, 32, 35]
ART_REL = [8, 21, 15, 0, 11, 11, 10, 8, 12, 14]
ONTOLOGIES = ["AMONTOLOGY", "BAO", "BWMD-MID", "CHMO", "EMMO",
              "MATONTO", "MM", "NMRRVOCAB", "PROCCHEMICAL", "USGS"]
ONT_CAND = [3, 62, 0, 28, 31, 39, 67, 25, 5, 22]
ONT_REL = [0, 11, 0, 7, 13, 23, 35, 12, 1, 8]


def northwest(rows, cols):
    rows, cols = list(rows), list(cols)
    assert sum(rows) == sum(cols)
    m = [[0] * len(cols) for _ in rows]
    i = j = 0
    while i < len(rows) and j < len(cols):
        q = min(rows[i], cols[j])
        m[i][j] = q
        rows[i] -= q
        cols[j] -= q
        if rows[i] == 0:
            i += 1
        else:
            j += 1
    return m


def hit(ont, term, rank):
    return {"uri": "http://example.org/%s#%s" % (ont.lower(), term.replace(" ", "_")),
            "prefLabel": term, "matched_phrase": term, "score": float(rank), "rank": rank,
            "display_weight": 1}


def write_results(path, articles, ontologies, cells):
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        for a, art in enumerate(articles):
            hits = {}
            total = 0
            for o, ont in enumerate(ontologies):
                terms = cells[a][o]
                hits[ont] = [hit(ont, t, r + 1) for r, t in enumerate(terms)]
                total += len(terms)
            line = {"source": "abstracts/%s.txt" % art, "article_id": art,
                    "candidates_total": total, "hits": hits}
            out.write(json.dumps(line, sort_keys=False) + "\n")


def mofs(rng):
    rel = northwest(ART_REL, ONT_REL)
    extra = northwest([c - r for c, r in zip(ART_CAND, ART_REL)],
                      [c - r for c, r in zip(ONT_CAND, ONT_REL)])
    cells, rows = [], []
    for a, art in enumerate(ARTICLES):
        row = []
        for o, ont in enumerate(ONTOLOGIES):
            n_rel, n_all = rel[a][o], rel[a][o] + extra[a][o]
            terms = ["%s term %s %d" % (ont.lower(), art.lower(), i + 1) for i in range(n_all)]
            flags = [True] * n_rel + [False] * (n_all - n_rel)
            rng.shuffle(flags)
            for term, relevant in zip(terms, flags):
                positive = rng.choice([4, 5]) if relevant else rng.choice([0, 1, 2, 3])
                votes = ["relevant" if rng.random() < 0.6 else "partial" for _ in range(positive)]
                votes += ["not"] * (5 - positive)
                rng.shuffle(votes)
                for r, v in enumerate(votes):
                    rows.append([art, ont, term, "R%d" % (r + 1), v])
            row.append(terms)
        cells.append(row)
    out = HERE / "mofs"
    out.mkdir(exist_ok=True)
    write_results(out / "results.jsonl", ARTICLES, ONTOLOGIES, cells)
    with open(out / "judgments.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["article_id", "ontology_id", "term", "rater", "rating"])
        w.writerows(rows)


def inorganic(rng):
    n, total, lo, hi = 60, 987, 5, 30
    counts = [lo, hi] + [rng.randint(lo, hi) for _ in range(n - 2)]
    while sum(counts) != total:
        i = rng.randrange(2, n)
        step = 1 if sum(counts) < total else -1
        if lo <= counts[i] + step <= hi:
            counts[i] += step
    rng.shuffle(counts)
    ratings = ["relevant"] * 392 + ["partial"] * 261 + ["not"] * 334
    rng.shuffle(ratings)
    articles = ["A%02d" % (i + 1) for i in range(n)]
    cells, rows, k = [], [], 0
    for art, c in zip(articles, counts):
        terms = ["inorganic term %s %d" % (art.lower(), i + 1) for i in range(c)]
        for t in terms:
            rows.append([art, "INORGANIC", t, "R1", ratings[k]])
            k += 1
        cells.append([terms])
    out = HERE / "inorganic"
    out.mkdir(exist_ok=True)
    write_results(out / "results.jsonl", articles, ["INORGANIC"], cells)
    with open(out / "judgments.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["article_id", "ontology_id", "term", "rater", "rating"])
        w.writerows(rows)


if __name__ == "__main__":
    rng = random.Random(20240517)
    mofs(rng)
    inorganic(rng)
