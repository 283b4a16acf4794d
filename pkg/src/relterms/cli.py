"""Command line interface: corpus stats, batch search, service launch.

Exit codes: 0 success, 1 unknown word, 2 bad flags/usage, 3 corpus load
failure, 4 listen address already in use.
"""

from __future__ import annotations

import errno
import os
import socket
import sys

import click

from .corpus import Corpus, CorpusError, load_corpus
from .hits import InvalidParamsError, SearchParams, search
from .render import json_bytes, search_result_to_document
from .service import corpus_from_manifest, create_app, load_manifest, resolve_listen

EXIT_UNKNOWN_WORD = 1
EXIT_CORPUS_FAILURE = 3
EXIT_ADDRESS_IN_USE = 4


def corpus_options(fn):
    fn = click.option("--manifest", type=click.Path(), help="JSON manifest with corpus file paths.")(fn)
    fn = click.option("--docs", type=click.Path(), help="Documents file (id<TAB>title).")(fn)
    fn = click.option("--links", type=click.Path(), help="Links file (src<TAB>dst).")(fn)
    fn = click.option("--cats", type=click.Path(), help="Category tree file.")(fn)
    fn = click.option("--members", type=click.Path(), help="Category membership file.")(fn)
    return fn


def _load(manifest, docs, links, cats, members) -> tuple[Corpus, dict | None]:
    manifest = manifest or os.environ.get("RELTERMS_MANIFEST")
    try:
        if manifest:
            loaded = load_manifest(manifest)
            return (
                load_corpus(
                    loaded["documents"], loaded["links"], loaded["categories"], loaded["membership"]
                ),
                loaded,
            )
        if not all([docs, links, cats, members]):
            raise click.UsageError(
                "provide --manifest (or RELTERMS_MANIFEST) or all of --docs/--links/--cats/--members"
            )
        return load_corpus(docs, links, cats, members), None
    except CorpusError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CORPUS_FAILURE)


@click.group()
def main():
    """Related-term search over a hyperlinked, categorized corpus."""


@main.command()
@corpus_options
def stats(manifest, docs, links, cats, members):
    """Load the corpus and print its stats."""
    corpus, _ = _load(manifest, docs, links, cats, members)
    s = corpus.stats()
    click.echo(f"pages                  {s.page_count}")
    click.echo(f"links                  {s.link_count}")
    click.echo(f"categories             {s.category_count}")
    click.echo(f"dropped dangling links {s.dropped_dangling_links}")


@main.command("search")
@click.argument("word")
@corpus_options
@click.option("--t", default=50, show_default=True, help="Root set volume.")
@click.option("--d", default=20, show_default=True, help="In-link cap per root document.")
@click.option("--n", default=10, show_default=True, help="Results per cluster.")
@click.option("--c-max", default=30.0, show_default=True, help="Cluster weight cap.")
@click.option("--epsilon", default=1e-8, show_default=True, help="Iteration error threshold.")
@click.option("--k", default=0.5, show_default=True, help="Authority/hub objective mix in [0,1].")
@click.option(
    "--root-mode",
    type=click.Choice(["adapted", "classic"]),
    default="adapted",
    show_default=True,
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json", "dot"]),
    default="table",
    show_default=True,
)
def search_cmd(word, manifest, docs, links, cats, members, t, d, n, c_max, epsilon, k, root_mode, fmt):
    """Search related terms for WORD and print them."""
    corpus, _ = _load(manifest, docs, links, cats, members)
    doc = corpus.lookup_title(word)
    if doc is None:
        click.echo(f"error: no page titled {word!r}", err=True)
        sys.exit(EXIT_UNKNOWN_WORD)
    try:
        params = SearchParams(
            s=doc.id, t=t, d=d, n=n, c_max=c_max, epsilon=epsilon, k=k, root_mode=root_mode
        )
    except InvalidParamsError as exc:
        raise click.UsageError(str(exc)) from exc
    result = search(corpus, params)
    body = search_result_to_document(corpus, result)
    if fmt == "json":
        click.echo(json_bytes(body))
    elif fmt == "dot":
        click.echo(_render_dot(body))
    else:
        click.echo(_render_table(body))


def _render_table(body: dict) -> str:
    rows = []
    rank = 0
    for cluster in body["clusters"]:
        for member in cluster["members"]:
            if member["selected"]:
                rank += 1
                rows.append(
                    (rank, member["title"], member["authority"], member["hub"], cluster["label"])
                )
    lines = [f"source: {body['source']['title']}  "
             f"(iterations={body['iterations_used']}, final_error={body['final_error']:.3e})"]
    lines.append(f"{'rank':>4}  {'title':<32}{'authority':>12}{'hub':>12}  cluster")
    for rank, title, authority, hub, label in rows:
        lines.append(f"{rank:>4}  {title:<32}{authority:>12.6f}{hub:>12.6f}  {label}")
    if not rows:
        lines.append("(no related terms found)")
    return "\n".join(lines)


def _render_dot(body: dict) -> str:
    """Base graph in dot form; selected authorities are double-ringed,
    the source is boxed."""
    source_id = body["source"]["id"]
    selected = set()
    titles = {}
    for cluster in body["clusters"]:
        for member in cluster["members"]:
            titles[member["id"]] = member["title"]
            if member["selected"]:
                selected.add(member["id"])
    lines = ["digraph base_set {"]
    for doc_id in sorted(titles):
        title = titles[doc_id].replace('"', '\\"')
        attrs = [f'label="{title}"']
        if doc_id == source_id:
            attrs.append("shape=box")
        elif doc_id in selected:
            attrs.append("peripheries=2")
        lines.append(f"  {doc_id} [{', '.join(attrs)}];")
    for u, v in body["edges"]:
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines)


@main.command()
@corpus_options
@click.option("--listen", help=f"host:port to bind (default {resolve_listen(None)}).")
def serve(manifest, docs, links, cats, members, listen):
    """Run the HTTP service over the corpus."""
    import uvicorn

    manifest_path = manifest or os.environ.get("RELTERMS_MANIFEST")
    loaded = None
    if manifest_path:
        try:
            loaded = load_manifest(manifest_path)
        except CorpusError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_CORPUS_FAILURE)
    corpus, _ = _load(manifest_path, docs, links, cats, members)
    address = resolve_listen(listen, loaded)
    host, _, port_text = address.rpartition(":")
    if not host or not port_text.isdigit():
        raise click.UsageError(f"listen address must be host:port, got {address!r}")
    port = int(port_text)
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            click.echo(f"error: {address} is already in use", err=True)
            sys.exit(EXIT_ADDRESS_IN_USE)
        click.echo(f"error: cannot bind {address}: {exc}", err=True)
        sys.exit(EXIT_ADDRESS_IN_USE)
    finally:
        probe.close()
    app = create_app(corpus)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
