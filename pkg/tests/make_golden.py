"""Build the golden mini-wiki search result from the reference oracles.

Composes naive root/base construction, the dense iteration, the
straight-line clustering, and brute-force selection into the documented
response body shape, then writes golden_automaton.json next to the
fixture. The engine never runs here; tests later require the engine (and
the HTTP/CLI surfaces) to reproduce this file.

Usage: python tests/make_golden.py
"""

from __future__ import annotations

import json
import math
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles
from relterms.corpus import load_corpus

FIXTURE = Path(__file__).parent / "fixtures" / "mini_wiki"
QUERY = {
    "title": "Automaton",
    "t": 10,
    "d": 3,
    "n": 5,
    "c_max": 12.0,
    "epsilon": 1e-8,
    "k": 0.5,
    "root_mode": "adapted",
    "max_iterations": 1000,
}


def canonical_selection(best_sets, authority):
    """Among argmax subsets, the one whose (descending authority,
    ascending id) ordering is lexicographically first."""
    def ordering(subset):
        return tuple(sorted(((-authority[v], v) for v in subset)))

    return sorted(min(best_sets, key=ordering), key=lambda v: (-authority[v], v))


def main():
    corpus = load_corpus(
        FIXTURE / "docs.tsv",
        FIXTURE / "links.tsv",
        FIXTURE / "categories.tsv",
        FIXTURE / "membership.tsv",
    )
    source = corpus.lookup_title(QUERY["title"])
    assert source is not None

    root = oracles.naive_root_set(corpus, source.id, QUERY["t"], QUERY["root_mode"])
    vertices = oracles.naive_base_vertices(corpus, root, QUERY["d"])
    edges = oracles.naive_base_edges(corpus, vertices)
    authority, hub, iterations, err = oracles.dense_iterate(
        vertices, edges, QUERY["epsilon"], QUERY["max_iterations"]
    )

    # member orderings rely on distinct weights; fail loudly if the
    # fixture ever degenerates into nonzero ties
    nonzero = sorted(a for a in authority.values() if a > 0.0)
    for lo, hi in zip(nonzero, nonzero[1:]):
        assert hi - lo > 1e-9, "fixture has near-tied nonzero authorities"

    partition = oracles.oracle_cluster(corpus, vertices, QUERY["c_max"])

    clusters = []
    for members in partition:
        cats = set()
        for m in members:
            cats.update(corpus.categories_of(m))
        counts = Counter(c for m in members for c in corpus.categories_of(m))
        if counts:
            label_id = min(counts, key=lambda c: (-counts[c], corpus.category_name(c), c))
            label = corpus.category_name(label_id)
        else:
            label = min(corpus.document(m).title for m in members)
        weight = len(members) + len(cats)

        best_sets, _, wit = oracles.brute_force_selection(
            vertices, edges, source.id, authority, QUERY["n"], candidates=members
        )
        assert len(best_sets) == 1, f"selection tie in fixture cluster {members}"
        picked = canonical_selection(best_sets, authority)
        hub_union = sorted({h for v in picked for h in wit[v]})
        objective = QUERY["k"] * math.fsum(authority[v] for v in picked) + (
            1.0 - QUERY["k"]
        ) * math.fsum(hub[h] for h in hub_union)

        clusters.append(
            {
                "label": label,
                "weight": weight,
                "oversized": weight > QUERY["c_max"],
                "categories": sorted(cats),
                "objective_value": objective,
                "members": [
                    {
                        "id": m,
                        "title": corpus.document(m).title,
                        "authority": authority[m],
                        "hub": hub[m],
                        "selected": m in set(picked),
                        "supporting_hubs": sorted(wit[m]) if m in set(picked) else [],
                    }
                    for m in sorted(members, key=lambda m: (-authority[m], m))
                ],
            }
        )
    clusters.sort(key=lambda c: (-max(m["authority"] for m in c["members"]), c["members"][0]["id"]))

    body = {
        "params": {
            "s": source.id,
            "t": QUERY["t"],
            "d": QUERY["d"],
            "n": QUERY["n"],
            "c_max": QUERY["c_max"],
            "epsilon": QUERY["epsilon"],
            "k": QUERY["k"],
            "root_mode": QUERY["root_mode"],
            "max_iterations": QUERY["max_iterations"],
        },
        "source": {"id": source.id, "title": source.title},
        "iterations_used": iterations,
        "final_error": err,
        "root_set": sorted(root),
        "edges": [[u, v] for u, v in edges],
        "clusters": clusters,
    }
    out = FIXTURE / "golden_automaton.json"
    out.write_text(json.dumps(body, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {out} ({iterations} iterations, final error {err:.3e})")


if __name__ == "__main__":
    main()
