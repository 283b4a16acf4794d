"""Wire-format documents shared by the HTTP service and the CLI.

Both surfaces must emit byte-identical JSON for the same query, so the
dict construction and the dump settings live here.
"""

from __future__ import annotations

import json

from .corpus import Corpus
from .hits import SearchResult
from .session import params_to_dict


def json_bytes(doc) -> bytes:
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"), allow_nan=False).encode(
        "utf-8"
    )


def search_result_to_document(corpus: Corpus, result: SearchResult) -> dict:
    """Search response body: params echo, clusters with per-member weights
    and witness hubs, the base-graph edge list, and iteration telemetry."""
    graph = result.graph
    clusters = []
    for entry in result.clusters:
        cluster = entry.cluster
        selection = entry.authorities
        picked = {doc_id for doc_id, _ in selection.selected}
        members = [
            {
                "id": m,
                "title": corpus.document(m).title,
                "authority": graph.authority.get(m, 0.0),
                "hub": graph.hub.get(m, 0.0),
                "selected": m in picked,
                "supporting_hubs": selection.supporting_hubs.get(m, []),
            }
            for m in sorted(cluster.members, key=lambda m: (-graph.authority.get(m, 0.0), m))
        ]
        clusters.append(
            {
                "label": cluster.label,
                "weight": cluster.weight,
                "oversized": cluster.oversized,
                "categories": list(cluster.categories),
                "objective_value": selection.objective_value,
                "members": members,
            }
        )
    return {
        "params": params_to_dict(result.params),
        "source": {"id": graph.source, "title": corpus.document(graph.source).title},
        "iterations_used": result.iterations_used,
        "final_error": result.final_error,
        "root_set": sorted(graph.root_set),
        "edges": [[u, v] for u, v in graph.edges],
        "clusters": clusters,
    }


def neighbors_to_document(corpus: Corpus, doc_id: int) -> dict:
    """Adjacency of one page, with title/name maps for labeling."""
    out_links, in_links, categories = corpus.neighbors(doc_id)
    mentioned = sorted({doc_id, *out_links, *in_links})
    return {
        "id": doc_id,
        "title": corpus.document(doc_id).title,
        "out_links": list(out_links),
        "in_links": list(in_links),
        "categories": list(categories),
        "titles": {str(m): corpus.document(m).title for m in mentioned},
        "category_names": {str(c): corpus.category_name(c) for c in sorted(categories)},
    }
