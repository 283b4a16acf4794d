"""In-memory corpus: documents, hyperlink adjacency, and the category tree.

The corpus is loaded once from four tab-separated files and is immutable
afterwards, so it is safe for any number of concurrent readers.

File formats (UTF-8, one record per line, lines starting with ``#`` and
blank lines are ignored):

    documents:  id <TAB> title
    links:      src_id <TAB> dst_id          (one directed edge per line)
    categories: cat_id <TAB> name <TAB> parent_id   (empty parent = root)
    membership: doc_id <TAB> cat_id

Titles act as the keyword set of a page and are matched after
normalization: surrounding whitespace trimmed, internal whitespace runs
collapsed, underscores replaced by spaces, and the first character
uppercased (wiki convention). Links whose source or target id does not
resolve to a document are dropped at ingest and counted in the stats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator


class CorpusError(Exception):
    """Base class for corpus loading and lookup failures."""


class IngestError(CorpusError):
    """A source file violates the corpus contract.

    Carries the source name and 1-based line number when the failure is
    tied to a specific record.
    """

    def __init__(self, message: str, source: str = "", line: int = 0):
        self.source = source
        self.line = line
        if source and line:
            message = f"{source}:{line}: {message}"
        elif source:
            message = f"{source}: {message}"
        super().__init__(message)


class UnknownDocumentError(CorpusError):
    """Lookup by an id that is not in the corpus."""


def normalize_title(title: str) -> str:
    """Normalize a title for matching: trim, collapse whitespace,
    underscores to spaces, first character uppercased."""
    cleaned = " ".join(title.replace("_", " ").split())
    if not cleaned:
        return cleaned
    return cleaned[0].upper() + cleaned[1:]


@dataclass(frozen=True)
class Document:
    """A corpus page. The title doubles as the page's keyword set."""

    id: int
    title: str
    out_links: tuple[int, ...] = ()
    in_links: tuple[int, ...] = ()
    categories: tuple[int, ...] = ()


@dataclass(frozen=True)
class Category:
    id: int
    name: str
    parent: int | None = None


@dataclass(frozen=True)
class CategoryTree:
    """Category taxonomy: a forest of parent/child edges."""

    categories: dict[int, Category] = field(default_factory=dict)

    def roots(self) -> list[int]:
        return sorted(c.id for c in self.categories.values() if c.parent is None)

    def name(self, cat_id: int) -> str:
        return self.categories[cat_id].name

    def __contains__(self, cat_id: int) -> bool:
        return cat_id in self.categories


@dataclass(frozen=True)
class CorpusStats:
    page_count: int
    link_count: int
    category_count: int
    dropped_dangling_links: int


class Corpus:
    """Immutable document store with both link directions indexed.

    Adjacency lists preserve source-file order; ``in_links`` is the exact
    transpose of ``out_links``.
    """

    def __init__(
        self,
        documents: dict[int, Document],
        tree: CategoryTree,
        stats: CorpusStats,
    ):
        self._documents = documents
        self._tree = tree
        self._stats = stats
        self._by_title = {normalize_title(d.title): d.id for d in documents.values()}

    def __contains__(self, doc_id: int) -> bool:
        return doc_id in self._documents

    def __len__(self) -> int:
        return len(self._documents)

    def document(self, doc_id: int) -> Document:
        try:
            return self._documents[doc_id]
        except KeyError:
            raise UnknownDocumentError(f"no document with id {doc_id}") from None

    def documents(self) -> Iterator[Document]:
        """All documents in ascending id order."""
        for doc_id in sorted(self._documents):
            yield self._documents[doc_id]

    def lookup_title(self, title: str) -> Document | None:
        """Find the document whose normalized title matches, else None."""
        doc_id = self._by_title.get(normalize_title(title))
        return None if doc_id is None else self._documents[doc_id]

    def neighbors(self, doc_id: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        """Stored (out_links, in_links, categories) of a document, order preserved."""
        doc = self.document(doc_id)
        return doc.out_links, doc.in_links, doc.categories

    def out_links(self, doc_id: int) -> tuple[int, ...]:
        return self.document(doc_id).out_links

    def in_links(self, doc_id: int) -> tuple[int, ...]:
        return self.document(doc_id).in_links

    def categories_of(self, doc_id: int) -> tuple[int, ...]:
        return self.document(doc_id).categories

    @property
    def category_tree(self) -> CategoryTree:
        return self._tree

    def category_name(self, cat_id: int) -> str:
        return self._tree.name(cat_id)

    def stats(self) -> CorpusStats:
        return self._stats


def _records(lines: Iterable[str], source: str, n_fields: int, min_fields: int | None = None):
    """Yield (line_number, fields) for each data line, validating field count."""
    lo = min_fields if min_fields is not None else n_fields
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if not lo <= len(fields) <= n_fields:
            raise IngestError(
                f"expected {n_fields} tab-separated fields, got {len(fields)}",
                source,
                lineno,
            )
        yield lineno, fields


def _parse_id(text: str, source: str, lineno: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise IngestError(f"invalid {what} {text!r}", source, lineno) from None


def ingest(
    documents: Iterable[str],
    links: Iterable[str],
    categories: Iterable[str],
    membership: Iterable[str],
    *,
    sources: tuple[str, str, str, str] = ("documents", "links", "categories", "membership"),
) -> Corpus:
    """Build an immutable corpus from the four record streams.

    Dangling links (either endpoint unknown) are dropped and counted;
    everything else that violates the contract raises IngestError with
    the offending source and line number.
    """
    doc_src, link_src, cat_src, member_src = sources

    titles: dict[int, str] = {}
    seen_titles: dict[str, int] = {}
    for lineno, fields in _records(documents, doc_src, 2):
        doc_id = _parse_id(fields[0], doc_src, lineno, "document id")
        title = fields[1]
        norm = normalize_title(title)
        if not norm:
            raise IngestError("empty title", doc_src, lineno)
        if doc_id in titles:
            raise IngestError(f"duplicate document id {doc_id}", doc_src, lineno)
        if norm in seen_titles:
            raise IngestError(
                f"duplicate normalized title {norm!r} (also id {seen_titles[norm]})",
                doc_src,
                lineno,
            )
        titles[doc_id] = title
        seen_titles[norm] = doc_id

    out: dict[int, list[int]] = {doc_id: [] for doc_id in titles}
    inc: dict[int, list[int]] = {doc_id: [] for doc_id in titles}
    kept = 0
    dropped = 0
    for lineno, fields in _records(links, link_src, 2):
        src = _parse_id(fields[0], link_src, lineno, "source id")
        dst = _parse_id(fields[1], link_src, lineno, "target id")
        if src not in titles or dst not in titles:
            dropped += 1
            continue
        out[src].append(dst)
        inc[dst].append(src)
        kept += 1

    cats: dict[int, Category] = {}
    pending_parents: dict[int, tuple[int, int]] = {}
    for lineno, fields in _records(categories, cat_src, 3, min_fields=2):
        cat_id = _parse_id(fields[0], cat_src, lineno, "category id")
        name = fields[1]
        parent_field = fields[2] if len(fields) == 3 else ""
        if cat_id in cats:
            raise IngestError(f"duplicate category id {cat_id}", cat_src, lineno)
        parent: int | None = None
        if parent_field.strip():
            parent = _parse_id(parent_field, cat_src, lineno, "parent id")
            pending_parents[cat_id] = (parent, lineno)
        cats[cat_id] = Category(cat_id, name, parent)
    for cat_id, (parent, lineno) in pending_parents.items():
        if parent not in cats:
            raise IngestError(f"unknown parent category {parent}", cat_src, lineno)
    _check_forest(cats, cat_src)

    members: dict[int, list[int]] = {doc_id: [] for doc_id in titles}
    for lineno, fields in _records(membership, member_src, 2):
        doc_id = _parse_id(fields[0], member_src, lineno, "document id")
        cat_id = _parse_id(fields[1], member_src, lineno, "category id")
        if doc_id not in titles:
            raise IngestError(f"unknown document id {doc_id}", member_src, lineno)
        if cat_id not in cats:
            raise IngestError(f"unknown category id {cat_id}", member_src, lineno)
        if cat_id not in members[doc_id]:
            members[doc_id].append(cat_id)

    docs = {
        doc_id: Document(
            id=doc_id,
            title=title,
            out_links=tuple(out[doc_id]),
            in_links=tuple(inc[doc_id]),
            categories=tuple(members[doc_id]),
        )
        for doc_id, title in titles.items()
    }
    stats = CorpusStats(
        page_count=len(docs),
        link_count=kept,
        category_count=len(cats),
        dropped_dangling_links=dropped,
    )
    return Corpus(docs, CategoryTree(cats), stats)


def _check_forest(cats: dict[int, Category], source: str) -> None:
    """Reject parent chains that loop back on themselves."""
    state: dict[int, int] = {}  # 0 = visiting, 1 = done
    for start in cats:
        if state.get(start) == 1:
            continue
        chain = []
        node: int | None = start
        while node is not None and state.get(node) != 1:
            if state.get(node) == 0:
                raise IngestError(f"category cycle detected through id {node}", source)
            state[node] = 0
            chain.append(node)
            node = cats[node].parent
        for c in chain:
            state[c] = 1


def load_corpus(
    documents_path: str | Path,
    links_path: str | Path,
    categories_path: str | Path,
    membership_path: str | Path,
) -> Corpus:
    """Load a corpus from the four normalized files."""
    paths = [Path(documents_path), Path(links_path), Path(categories_path), Path(membership_path)]
    streams = []
    for p in paths:
        try:
            streams.append(p.read_text(encoding="utf-8").splitlines())
        except OSError as exc:
            raise CorpusError(f"cannot read {p}: {exc}") from exc
    return ingest(*streams, sources=tuple(str(p) for p in paths))
