"""Related-term search over hyperlinked, categorized corpora."""

from .clustering import Cluster, cluster_base_set, similarity
from .corpus import (
    Category,
    CategoryTree,
    Corpus,
    CorpusError,
    CorpusStats,
    Document,
    IngestError,
    UnknownDocumentError,
    ingest,
    load_corpus,
    normalize_title,
)
from .hits import (
    AuthorityResult,
    BaseGraph,
    ClusterResult,
    InvalidParamsError,
    SearchParams,
    SearchResult,
    build_base_set,
    build_root_set,
    iterate,
    search,
    select_authorities,
)
from .session import Session, SessionStore, load, rate, save, unrate

__version__ = "0.1.0"
