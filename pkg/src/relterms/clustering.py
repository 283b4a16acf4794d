"""Topic clustering of a base set by shared links and shared categories.

Pairwise similarity of two base-set documents is the mean of two Jaccard
overlaps: their out-link sets restricted to the base set, and their
category sets (both Jaccards treat empty-vs-empty as 0). Clusters are
grown agglomeratively under average linkage until no merge is admissible,
where a merge is admissible when the pair's linkage is positive and the
merged cluster weight (member count plus distinct category count) stays
within c_max.

Linkage bookkeeping runs on similarities quantized to 30 fractional bits
(integers), so cluster-pair sums are exact and independent of summation
order; merge decisions are therefore bit-reproducible across runs and
implementations. The quantization step of 2**-30 is far below any
attainable gap between distinct Jaccard means at realistic base-set
sizes. Ties on linkage break toward the pair whose smallest member id is
lowest (then its partner's smallest id).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus

QUANT = 1 << 30  # fixed-point scale for linkage arithmetic


@dataclass(frozen=True)
class Cluster:
    """A block of the base-set partition.

    weight = len(members) + len(categories). label names the most frequent
    member category (count ties: alphabetical name, then id), or the
    alphabetically lowest member title when no member has a category.
    oversized marks singletons whose own weight already exceeds c_max.
    """

    members: tuple[int, ...]
    categories: tuple[int, ...]
    weight: int
    label: str
    oversized: bool = False


def similarity(u: int, v: int, graph, corpus: Corpus) -> float:
    """Link/category similarity of two base-set documents, in [0, 1]."""
    base = set(graph.vertices)
    lu = set(corpus.out_links(u)) & base
    lv = set(corpus.out_links(v)) & base
    cu = set(corpus.categories_of(u))
    cv = set(corpus.categories_of(v))
    return 0.5 * _jaccard(lu, lv) + 0.5 * _jaccard(cu, cv)


def _jaccard(x: set, y: set) -> float:
    union = len(x | y)
    if union == 0:
        return 0.0
    return len(x & y) / union


def _pair_matrices(vertices: list[int], corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    """All-pairs similarity over the base set, plus the vertex/category
    incidence matrix (n x K over the distinct member categories).

    Similarity entry [i, j] equals similarity(vertices[i], vertices[j],
    ...) bit for bit: intersections and union sizes are exact integer
    counts, and the final expression applies the same float operations as
    the scalar form.
    """
    from scipy import sparse

    n = len(vertices)
    vset = set(vertices)
    index = {v: i for i, v in enumerate(vertices)}

    link_rows, link_cols = [], []
    for i, u in enumerate(vertices):
        for t in set(corpus.out_links(u)) & vset:
            link_rows.append(i)
            link_cols.append(index[t])
    cat_ids = sorted({c for u in vertices for c in corpus.categories_of(u)})
    cat_index = {c: j for j, c in enumerate(cat_ids)}
    cat_incidence = np.zeros((n, len(cat_ids)))
    for i, u in enumerate(vertices):
        for c in corpus.categories_of(u):
            cat_incidence[i, cat_index[c]] = 1.0

    def jaccard_matrix(inter, sizes):
        union = sizes[:, None] + sizes[None, :] - inter
        out = np.zeros((n, n))
        np.divide(inter, union, out=out, where=union > 0)
        return out

    links = sparse.csr_matrix(
        (np.ones(len(link_rows)), (link_rows, link_cols)), shape=(n, max(n, 1))
    )
    j_links = jaccard_matrix(
        np.asarray((links @ links.T).todense()), np.asarray(links.sum(axis=1)).ravel()
    )
    j_cats = jaccard_matrix(cat_incidence @ cat_incidence.T, cat_incidence.sum(axis=1))
    return 0.5 * j_links + 0.5 * j_cats, cat_incidence


def cluster_base_set(graph, corpus: Corpus, c_max: float) -> list[Cluster]:
    """Agglomerate the base set under the c_max weight cap.

    Returns a partition of graph.vertices sorted by maximum member
    authority weight descending (ties: lowest member id first). Every
    cluster of size >= 2 has weight <= c_max; a singleton may exceed the
    cap and is then flagged oversized.
    """
    if not c_max > 0:
        raise ValueError(f"c_max must be > 0, got {c_max}")
    vertices = sorted(graph.vertices)
    n = len(vertices)
    if n == 0:
        return []

    similarity_matrix, cat_matrix = _pair_matrices(vertices, corpus)
    quantized = np.rint(similarity_matrix * QUANT).astype(np.int64)

    members: list[list[int]] = [[v] for v in vertices]
    sizes = np.ones(n, dtype=np.int64)
    cat_deg = cat_matrix.sum(axis=1)
    alive = np.ones(n, dtype=bool)
    pair_sums = quantized.copy()

    # effective linkage; -1 marks ineligible slots (diagonal, lower
    # triangle, dead clusters, zero similarity, overweight merges).
    # admissibility is decided once per cluster pair: clusters only grow,
    # so an overweight pair can never become admissible later.
    linkage = pair_sums.astype(np.float64)
    cat_inter = cat_matrix @ cat_matrix.T
    cat_union = cat_deg[:, None] + cat_deg[None, :] - cat_inter
    linkage[(pair_sums <= 0) | (2.0 + cat_union > c_max)] = -1.0
    linkage[np.tril_indices(n)] = -1.0

    while n > 1:
        top = linkage.max()
        if top <= 0.0:
            break
        i, j = divmod(int(linkage.argmax()), n)
        if np.count_nonzero(linkage == top) > 1:
            ties = np.argwhere(linkage == top)
            i, j = min(
                ((int(r), int(c)) for r, c in ties),
                key=lambda rc: (
                    min(members[rc[0]][0], members[rc[1]][0]),
                    max(members[rc[0]][0], members[rc[1]][0]),
                ),
            )

        members[i] = sorted(members[i] + members[j])
        sizes[i] += sizes[j]
        np.maximum(cat_matrix[i], cat_matrix[j], out=cat_matrix[i])
        cat_deg[i] = cat_matrix[i].sum()
        pair_sums[i, :] += pair_sums[j, :]
        pair_sums[:, i] += pair_sums[:, j]
        alive[j] = False
        linkage[j, :] = -1.0
        linkage[:, j] = -1.0

        others = np.flatnonzero(alive)
        others = others[others != i]
        if others.size:
            sums = pair_sums[i, others]
            fresh = sums.astype(np.float64) / (sizes[i] * sizes[others]).astype(np.float64)
            union = cat_deg[others] + cat_deg[i] - cat_matrix[others] @ cat_matrix[i]
            fresh[(sums <= 0) | (sizes[i] + sizes[others] + union > c_max)] = -1.0
            below = others < i
            linkage[others[below], i] = fresh[below]
            linkage[i, others[~below]] = fresh[~below]
            linkage[i, others[below]] = -1.0
            linkage[others[~below], i] = -1.0

    slots = [slot for slot in range(n) if alive[slot]]
    clusters = [_finish_cluster(members[slot], corpus, c_max) for slot in slots]
    clusters.sort(key=lambda c: (-max(graph.authority.get(m, 0.0) for m in c.members), c.members[0]))
    return clusters


def _finish_cluster(member_ids: list[int], corpus: Corpus, c_max: float) -> Cluster:
    ordered = tuple(sorted(member_ids))
    cats = {c for m in ordered for c in corpus.categories_of(m)}
    weight = len(ordered) + len(cats)
    counts = Counter(c for m in ordered for c in corpus.categories_of(m))
    if counts:
        label = min(
            counts, key=lambda c: (-counts[c], corpus.category_name(c), c)
        )
        label_name = corpus.category_name(label)
    else:
        label_name = min(corpus.document(m).title for m in ordered)
    return Cluster(
        members=ordered,
        categories=tuple(sorted(cats)),
        weight=weight,
        label=label_name,
        oversized=weight > c_max,
    )
