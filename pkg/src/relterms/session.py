"""Per-user interactive state: rated synonym candidates for a source word.

A session remembers the source title, the search parameters it was
created with, the set of document ids the user has seen (search results
plus node expansions), and which of those the user rated as synonyms.
Rating an id the session has never shown is an error; unrating removes
the entry entirely, so rate-then-unrate restores the exact prior state.

Sessions persist as versioned, human-readable JSON. The server keeps live
sessions in memory keyed by opaque tokens; durability is the client's
business via save/load.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .hits import InvalidParamsError, SearchParams

SESSION_FILE_VERSION = 1
RATING_SYNONYM = "synonym"


class SessionError(Exception):
    """Base class for session failures."""


class UnknownSessionPageError(SessionError):
    """Rated or expanded an id the session has never seen."""


class UnknownTokenError(SessionError):
    """No live session under that token."""


class MalformedSessionFileError(SessionError):
    """Session file does not match the documented schema."""


class UnsupportedVersionError(SessionError):
    """Session file written by a newer schema version."""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


@dataclass
class Session:
    source_title: str
    params: SearchParams
    seen: set[int] = field(default_factory=set)
    ratings: dict[int, str] = field(default_factory=dict)
    created_at: str = field(default_factory=_now)
    updated_at: str = field(default_factory=_now)


def rate(session: Session, doc_id: int) -> Session:
    """Mark doc_id as a synonym. Idempotent; the id must have been seen."""
    if doc_id not in session.seen:
        raise UnknownSessionPageError(f"id {doc_id} is not part of this session's results")
    session.ratings[doc_id] = RATING_SYNONYM
    session.updated_at = _now()
    return session


def unrate(session: Session, doc_id: int) -> Session:
    """Remove a synonym mark. Unrating an unrated (but seen) id is a no-op."""
    if doc_id not in session.seen:
        raise UnknownSessionPageError(f"id {doc_id} is not part of this session's results")
    session.ratings.pop(doc_id, None)
    session.updated_at = _now()
    return session


def add_seen(session: Session, ids) -> Session:
    """Record ids delivered to the client (search result or expansion)."""
    session.seen.update(ids)
    session.updated_at = _now()
    return session


def params_to_dict(params: SearchParams) -> dict:
    return {
        "s": params.s,
        "t": params.t,
        "d": params.d,
        "n": params.n,
        "c_max": params.c_max,
        "epsilon": params.epsilon,
        "k": params.k,
        "root_mode": params.root_mode,
        "max_iterations": params.max_iterations,
    }


def session_to_document(session: Session) -> dict:
    """The serialized form: also the body of the session API endpoints."""
    return {
        "version": SESSION_FILE_VERSION,
        "source_title": session.source_title,
        "params": params_to_dict(session.params),
        "ratings": [
            {"id": doc_id, "rating": session.ratings[doc_id]}
            for doc_id in sorted(session.ratings)
        ],
        "seen_ids": sorted(session.seen),
        "created_at": session.created_at,
        "updated_at": session.updated_at,
    }


def save(session: Session, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(session_to_document(session), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def session_from_document(doc: dict) -> Session:
    if not isinstance(doc, dict):
        raise MalformedSessionFileError("session document must be an object")
    version = doc.get("version")
    if not isinstance(version, int):
        raise MalformedSessionFileError("missing or non-integer version field")
    if version > SESSION_FILE_VERSION:
        raise UnsupportedVersionError(
            f"session file version {version} is newer than supported version {SESSION_FILE_VERSION}"
        )
    try:
        params = SearchParams(**doc["params"])
        source_title = doc["source_title"]
        seen = {int(i) for i in doc["seen_ids"]}
        ratings = {int(r["id"]): str(r["rating"]) for r in doc["ratings"]}
        created_at = str(doc["created_at"])
        updated_at = str(doc["updated_at"])
    except (KeyError, TypeError, ValueError, InvalidParamsError) as exc:
        raise MalformedSessionFileError(f"bad session document: {exc}") from exc
    if not isinstance(source_title, str) or not source_title:
        raise MalformedSessionFileError("source_title must be a non-empty string")
    if not set(ratings) <= seen:
        raise MalformedSessionFileError("ratings reference ids outside seen_ids")
    return Session(
        source_title=source_title,
        params=params,
        seen=seen,
        ratings=ratings,
        created_at=created_at,
        updated_at=updated_at,
    )


def load(path: str | Path) -> Session:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SessionError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedSessionFileError(f"not valid JSON: {exc}") from exc
    return session_from_document(doc)


class SessionStore:
    """In-memory token -> Session map; mutations are serialized."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, session: Session) -> str:
        token = uuid.uuid4().hex
        with self._lock:
            self._sessions[token] = session
        return token

    def get(self, token: str) -> Session:
        with self._lock:
            try:
                return self._sessions[token]
            except KeyError:
                raise UnknownTokenError(f"no session for token {token!r}") from None

    def mutate(self, token: str, fn) -> Session:
        """Apply fn(session) under the store lock and return the session."""
        with self._lock:
            try:
                session = self._sessions[token]
            except KeyError:
                raise UnknownTokenError(f"no session for token {token!r}") from None
            return fn(session)


__all__ = [
    "RATING_SYNONYM",
    "SESSION_FILE_VERSION",
    "MalformedSessionFileError",
    "Session",
    "SessionError",
    "SessionStore",
    "UnknownSessionPageError",
    "UnknownTokenError",
    "UnsupportedVersionError",
    "add_seen",
    "load",
    "params_to_dict",
    "rate",
    "save",
    "session_from_document",
    "session_to_document",
    "unrate",
]
