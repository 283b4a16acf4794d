"""Synthetic corpus generator for benchmarks and scale tests.

Produces the same four-file normalized format the engine ingests. Link
targets follow a Zipf-like popularity profile over a shuffled ranking, so
a few pages collect large in-link counts (wiki-shaped); out-degrees are
Poisson-distributed and capped. Fully deterministic for a given seed.

Run directly to write a corpus:

    python -m relterms.synth --out /tmp/synth --docs 100000 --links 1000000
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import numpy as np

MAX_OUT_DEGREE = 25


def generate_links(n_docs: int, n_links: int, rng: np.random.Generator) -> np.ndarray:
    """Exactly n_links unique directed (src, dst) pairs, no self-loops,
    sorted by (src, dst)."""
    if n_links > n_docs * (n_docs - 1):
        raise ValueError("more links requested than distinct pairs exist")
    ranks = rng.permutation(n_docs) + 1
    weights = 1.0 / ranks**0.8
    weights /= weights.sum()

    deg = np.clip(rng.poisson(max(1, n_links // max(n_docs, 1)), n_docs), 1, MAX_OUT_DEGREE)
    src_pool = np.repeat(np.arange(1, n_docs + 1), deg)
    rng.shuffle(src_pool)

    keys = np.empty(0, dtype=np.int64)
    need = n_links
    cursor = 0
    while keys.size < n_links:
        batch = max(need + need // 4 + 16, 1024)
        if cursor < src_pool.size:
            src = src_pool[cursor : cursor + batch]
            cursor += src.size
            if src.size < batch:
                src = np.concatenate([src, rng.integers(1, n_docs + 1, batch - src.size)])
        else:
            src = rng.integers(1, n_docs + 1, batch)
        dst = rng.choice(np.arange(1, n_docs + 1), size=batch, p=weights)
        ok = src != dst
        fresh = src[ok].astype(np.int64) * (n_docs + 1) + dst[ok]
        keys = np.unique(np.concatenate([keys, fresh]))
        need = n_links - keys.size
    keys = keys[:n_links]
    return np.column_stack([keys // (n_docs + 1), keys % (n_docs + 1)])


def generate_corpus(
    out_dir: str | Path,
    n_docs: int = 100_000,
    n_links: int = 1_000_000,
    n_categories: int = 200,
    seed: int = 0,
) -> dict:
    """Write a synthetic corpus and return its manifest dict.

    The manifest gains a ``suggested_source`` key naming the page with
    the highest out-degree (ties to the lowest id), a natural query for
    benchmarking.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    pairs = generate_links(n_docs, n_links, rng)

    n_roots = max(1, n_categories // 10)
    cat_ids = np.arange(1, n_categories + 1)
    parents = np.where(cat_ids <= n_roots, 0, rng.integers(1, n_roots + 1, n_categories))
    cat_weights = 1.0 / cat_ids**0.7
    cat_weights /= cat_weights.sum()
    cats_per_doc = rng.integers(1, 4, n_docs)
    member_doc = np.repeat(np.arange(1, n_docs + 1), cats_per_doc)
    member_cat = rng.choice(cat_ids, size=member_doc.size, p=cat_weights)

    docs_path = out_dir / "docs.tsv"
    docs_path.write_text(
        "".join(f"{i}\tPage {i}\n" for i in range(1, n_docs + 1)), encoding="utf-8"
    )
    links_path = out_dir / "links.tsv"
    links_path.write_text(
        "".join(f"{s}\t{t}\n" for s, t in pairs.tolist()), encoding="utf-8"
    )
    cats_path = out_dir / "categories.tsv"
    cats_path.write_text(
        "".join(
            f"{c}\tTopic {c}\t{p if p else ''}\n" for c, p in zip(cat_ids.tolist(), parents.tolist())
        ),
        encoding="utf-8",
    )
    members_path = out_dir / "membership.tsv"
    members_path.write_text(
        "".join(f"{d}\t{c}\n" for d, c in zip(member_doc.tolist(), member_cat.tolist())),
        encoding="utf-8",
    )

    out_counts = np.bincount(pairs[:, 0], minlength=n_docs + 1)
    top = int(np.argmax(out_counts))
    manifest = {
        "documents": "docs.tsv",
        "links": "links.tsv",
        "categories": "categories.tsv",
        "membership": "membership.tsv",
        "suggested_source": f"Page {top}",
        "seed": seed,
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return manifest


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--docs", type=int, default=100_000)
    parser.add_argument("--links", type=int, default=1_000_000)
    parser.add_argument("--categories", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    manifest = generate_corpus(args.out, args.docs, args.links, args.categories, args.seed)
    print(f"wrote corpus to {args.out} (suggested source: {manifest['suggested_source']})")


if __name__ == "__main__":
    main()
