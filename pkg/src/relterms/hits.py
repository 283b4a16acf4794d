"""Hub/authority search around a source document.

Pipeline: build a root set around the source, expand it into a base set,
run the mutual hub/authority iteration on the induced subgraph, cluster
the base set by shared links and categories, and pick the top authorities
that are co-cited with the source.

Per iteration each authority weight becomes the sum of the hub weights of
the pages linking to it, each hub weight becomes the sum of the (just
updated) authority weights of the pages it links to, and both vectors are
rescaled to unit Euclidean length. The iteration error is the sum over
vertices of the absolute post-normalization changes of both weights; the
loop stops once it drops to ``epsilon`` or the iteration cap is hit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clustering import Cluster, cluster_base_set
from .corpus import Corpus

ROOT_MODES = ("adapted", "classic")


class InvalidParamsError(ValueError):
    """A search parameter is outside its documented domain."""


@dataclass(frozen=True)
class SearchParams:
    """Knobs of one search query.

    s is the source document id; t caps the root set size (source
    included); d caps how many in-link sources each root document may
    pull into the base set; n is the number of related terms wanted per
    cluster; c_max bounds the cluster weight (documents + categories);
    epsilon is the iteration stop threshold; k mixes authority against
    hub mass in the reported objective. root_mode "adapted" seeds the
    root set from the source's out-links, "classic" from its in-links.
    """

    s: int
    t: int = 50
    d: int = 20
    n: int = 10
    c_max: float = 30.0
    epsilon: float = 1e-8
    k: float = 0.5
    root_mode: str = "adapted"
    max_iterations: int = 1000

    def __post_init__(self):
        if self.t < 1:
            raise InvalidParamsError(f"t must be >= 1, got {self.t}")
        if self.d < 0:
            raise InvalidParamsError(f"d must be >= 0, got {self.d}")
        if self.n < 1:
            raise InvalidParamsError(f"n must be >= 1, got {self.n}")
        if not self.c_max > 0:
            raise InvalidParamsError(f"c_max must be > 0, got {self.c_max}")
        if not self.epsilon > 0:
            raise InvalidParamsError(f"epsilon must be > 0, got {self.epsilon}")
        if not 0.0 <= self.k <= 1.0:
            raise InvalidParamsError(f"k must be in [0, 1], got {self.k}")
        if self.root_mode not in ROOT_MODES:
            raise InvalidParamsError(f"root_mode must be one of {ROOT_MODES}, got {self.root_mode!r}")
        if self.max_iterations < 1:
            raise InvalidParamsError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass
class BaseGraph:
    """Induced subgraph of a query's base set with per-vertex weights.

    vertices are sorted ascending; edges keep corpus adjacency order per
    source vertex and may contain parallel duplicates if the corpus does.
    authority/hub are empty until iterate() fills them.
    """

    vertices: list[int]
    edges: list[tuple[int, int]]
    source: int
    root_set: frozenset[int]
    authority: dict[int, float] = field(default_factory=dict)
    hub: dict[int, float] = field(default_factory=dict)


@dataclass(frozen=True)
class AuthorityResult:
    """Top related documents plus the hub pages that co-cite them with s.

    selected is sorted by authority weight descending, ties by ascending
    id. supporting_hubs[a] lists every vertex with out-links to both the
    source and a, ascending. objective_value mixes the selected authority
    mass with the hub mass of the witness union by factor k.
    """

    selected: list[tuple[int, float]]
    supporting_hubs: dict[int, list[int]]
    objective_value: float


@dataclass(frozen=True)
class ClusterResult:
    cluster: Cluster
    authorities: AuthorityResult


@dataclass(frozen=True)
class SearchResult:
    params: SearchParams
    graph: BaseGraph
    clusters: list[ClusterResult]
    iterations_used: int
    final_error: float


def build_root_set(corpus: Corpus, s: int, t: int, root_mode: str = "adapted") -> list[int]:
    """Root set around s: the source plus its first t-1 stored links.

    adapted mode follows out-links, classic mode in-links. Returns the
    source first, then the kept neighbors in stored order (duplicates in
    the stored list are folded after truncation).
    """
    if t < 1:
        raise InvalidParamsError(f"t must be >= 1, got {t}")
    if root_mode not in ROOT_MODES:
        raise InvalidParamsError(f"root_mode must be one of {ROOT_MODES}, got {root_mode!r}")
    doc = corpus.document(s)
    links = doc.out_links if root_mode == "adapted" else doc.in_links
    root = [s]
    seen = {s}
    for v in links[: t - 1]:
        if v not in seen:
            seen.add(v)
            root.append(v)
    return root


def build_base_set(corpus: Corpus, root: list[int], d: int, *, source: int) -> BaseGraph:
    """Expand the root set into a base graph.

    Vertices: the root, every out-link target of a root document, and the
    first d in-link sources of each root document in stored order. Edges:
    every corpus link with both endpoints inside the vertex set.
    """
    if d < 0:
        raise InvalidParamsError(f"d must be >= 0, got {d}")
    if not root:
        raise InvalidParamsError("root set is empty")
    verts: set[int] = set(root)
    for u in root:
        doc = corpus.document(u)
        verts.update(doc.out_links)
        verts.update(doc.in_links[:d])
    vertices = sorted(verts)
    edges = [(u, v) for u in vertices for v in corpus.out_links(u) if v in verts]
    return BaseGraph(
        vertices=vertices,
        edges=edges,
        source=source,
        root_set=frozenset(root),
    )


def _unit(v: np.ndarray) -> np.ndarray:
    norm = math.sqrt(float((v * v).sum()))
    return v / norm if norm > 0.0 else v


def iterate(
    graph: BaseGraph, epsilon: float, max_iterations: int = 1000
) -> tuple[BaseGraph, int, float]:
    """Run the hub/authority iteration on the graph until the error drops
    to epsilon or max_iterations is reached.

    Fills graph.authority and graph.hub in place and returns
    (graph, iterations_used, final_error). A graph with no edges collapses
    to all-zero weight vectors (normalization is skipped for a zero
    vector).
    """
    if not epsilon > 0:
        raise InvalidParamsError(f"epsilon must be > 0, got {epsilon}")
    if max_iterations < 1:
        raise InvalidParamsError(f"max_iterations must be >= 1, got {max_iterations}")
    verts = graph.vertices
    n = len(verts)
    if n == 0:
        return graph, 0, 0.0
    index = {v: i for i, v in enumerate(verts)}
    m = len(graph.edges)
    src = np.fromiter((index[u] for u, _ in graph.edges), dtype=np.intp, count=m)
    dst = np.fromiter((index[v] for _, v in graph.edges), dtype=np.intp, count=m)

    a = np.ones(n)
    h = np.ones(n)
    iterations = 0
    err = math.inf
    while iterations < max_iterations:
        iterations += 1
        a_prev = a
        h_prev = h
        a = np.bincount(dst, weights=h_prev[src], minlength=n)
        h = np.bincount(src, weights=a[dst], minlength=n)
        a = _unit(a)
        h = _unit(h)
        err = float(np.abs(a - a_prev).sum() + np.abs(h - h_prev).sum())
        if err <= epsilon:
            break
    graph.authority = {v: float(a[i]) for i, v in enumerate(verts)}
    graph.hub = {v: float(h[i]) for i, v in enumerate(verts)}
    return graph, iterations, err


def select_authorities(
    graph: BaseGraph, n: int, k: float, candidates=None
) -> AuthorityResult:
    """Pick the top-n co-cited authorities and their witness hubs.

    A vertex v != source is eligible when some hub vertex links to both
    the source and v. Eligible vertices are ranked by authority weight
    (ties by ascending id); supporting_hubs lists every witness of each
    pick. When candidates is given, only those vertices are considered
    (used for per-cluster selection).
    """
    if n < 1:
        raise InvalidParamsError(f"n must be >= 1, got {n}")
    if not 0.0 <= k <= 1.0:
        raise InvalidParamsError(f"k must be in [0, 1], got {k}")
    if not graph.authority and graph.vertices:
        raise InvalidParamsError("graph weights not computed; run iterate() first")
    s = graph.source
    out_sets: dict[int, set[int]] = {}
    for u, v in graph.edges:
        out_sets.setdefault(u, set()).add(v)

    witnesses: dict[int, list[int]] = {}
    for hub_id in sorted(u for u, targets in out_sets.items() if s in targets):
        for v in out_sets[hub_id]:
            if v != s:
                witnesses.setdefault(v, []).append(hub_id)

    pool = set(witnesses)
    if candidates is not None:
        pool &= set(candidates)
    ranked = sorted(pool, key=lambda v: (-graph.authority[v], v))[:n]

    selected = [(v, graph.authority[v]) for v in ranked]
    supporting = {v: witnesses[v] for v in ranked}
    hub_union = sorted({hub_id for v in ranked for hub_id in witnesses[v]})
    objective = k * math.fsum(a for _, a in selected) + (1.0 - k) * math.fsum(
        graph.hub[hub_id] for hub_id in hub_union
    )
    return AuthorityResult(selected=selected, supporting_hubs=supporting, objective_value=objective)


def search(corpus: Corpus, params: SearchParams) -> SearchResult:
    """Full query pipeline: root set, base set, iteration, clustering,
    then per-cluster authority selection.

    Clusters come back ordered by their top member authority weight
    descending. Deterministic for a fixed corpus and params.
    """
    root = build_root_set(corpus, params.s, params.t, params.root_mode)
    graph = build_base_set(corpus, root, params.d, source=params.s)
    graph, iterations, err = iterate(graph, params.epsilon, params.max_iterations)
    clusters = cluster_base_set(graph, corpus, params.c_max)
    results = [
        ClusterResult(c, select_authorities(graph, params.n, params.k, candidates=c.members))
        for c in clusters
    ]
    return SearchResult(
        params=params,
        graph=graph,
        clusters=results,
        iterations_used=iterations,
        final_error=err,
    )
