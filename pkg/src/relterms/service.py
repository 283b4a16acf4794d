"""HTTP API over one loaded corpus: search, node expansion, sessions.

Error bodies always carry exactly one machine code and a message:
``{"code": "bad_request" | "not_found" | "server_error", "message": ...}``.

Read endpoints are freely concurrent (the corpus is immutable); session
endpoints serialize through the session store. The service loads a single
corpus at startup; paths come from a JSON manifest file, overridable by
environment (RELTERMS_MANIFEST, RELTERMS_LISTEN).
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import session as sessions
from .corpus import Corpus, CorpusError, UnknownDocumentError, load_corpus
from .hits import InvalidParamsError, SearchParams, search
from .render import json_bytes, neighbors_to_document, search_result_to_document

DEFAULT_LISTEN = "127.0.0.1:8080"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def _bad_request(message: str) -> ApiError:
    return ApiError(400, "bad_request", message)


def _not_found(message: str) -> ApiError:
    return ApiError(404, "not_found", message)


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"code": code, "message": message or "unspecified error"}, status_code=status)


def _params_for(corpus: Corpus, title: str, overrides: dict) -> SearchParams:
    doc = corpus.lookup_title(title)
    if doc is None:
        raise _not_found(f"no page titled {title!r}")
    try:
        return SearchParams(s=doc.id, **overrides)
    except (InvalidParamsError, TypeError) as exc:
        raise _bad_request(str(exc)) from exc


def _session_overrides(body: dict) -> dict:
    raw = body.get("params") or {}
    if not isinstance(raw, dict):
        raise _bad_request("params must be an object")
    allowed = {"t", "d", "n", "c_max", "epsilon", "k", "root_mode", "max_iterations"}
    unknown = set(raw) - allowed
    if unknown:
        raise _bad_request(f"unknown params: {sorted(unknown)}")
    return raw


def _body_id(body: dict) -> int:
    if not isinstance(body, dict) or not isinstance(body.get("id"), int):
        raise _bad_request("body must be an object with an integer 'id'")
    return body["id"]


def create_app(corpus: Corpus) -> FastAPI:
    app = FastAPI(title="relterms", docs_url=None, redoc_url=None)
    # the browser explorer may be served from a different origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = sessions.SessionStore()

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return _error_response(400, "bad_request", str(exc.errors()[:1]))

    @app.exception_handler(Exception)
    async def handle_crash(request: Request, exc: Exception):
        return _error_response(500, "server_error", f"{type(exc).__name__}: {exc}")

    @app.get("/health")
    async def health():
        stats = corpus.stats()
        return {
            "status": "ok",
            "stats": {
                "page_count": stats.page_count,
                "link_count": stats.link_count,
                "category_count": stats.category_count,
                "dropped_dangling_links": stats.dropped_dangling_links,
            },
        }

    @app.get("/search")
    async def search_endpoint(
        title: str,
        t: int | None = None,
        d: int | None = None,
        n: int | None = None,
        c_max: float | None = None,
        epsilon: float | None = None,
        k: float | None = None,
        root_mode: str | None = None,
        max_iterations: int | None = None,
    ):
        overrides = {
            name: value
            for name, value in [
                ("t", t),
                ("d", d),
                ("n", n),
                ("c_max", c_max),
                ("epsilon", epsilon),
                ("k", k),
                ("root_mode", root_mode),
                ("max_iterations", max_iterations),
            ]
            if value is not None
        }
        params = _params_for(corpus, title, overrides)
        result = search(corpus, params)
        doc = search_result_to_document(corpus, result)
        return Response(content=json_bytes(doc), media_type="application/json")

    @app.get("/page/{page_id}/neighbors")
    async def neighbors_endpoint(page_id: int):
        try:
            doc = neighbors_to_document(corpus, page_id)
        except UnknownDocumentError as exc:
            raise _not_found(str(exc)) from exc
        return Response(content=json_bytes(doc), media_type="application/json")

    @app.post("/session")
    async def create_session(body: dict):
        if not isinstance(body.get("title"), str):
            raise _bad_request("body must carry a string 'title'")
        params = _params_for(corpus, body["title"], _session_overrides(body))
        result = search(corpus, params)
        session = sessions.Session(
            source_title=corpus.document(params.s).title,
            params=params,
            seen=set(result.graph.vertices),
        )
        token = store.create(session)
        return {
            "token": token,
            "session": sessions.session_to_document(session),
            "result": search_result_to_document(corpus, result),
        }

    @app.get("/session/{token}")
    async def get_session(token: str):
        try:
            session = store.get(token)
        except sessions.UnknownTokenError as exc:
            raise _not_found(str(exc)) from exc
        return sessions.session_to_document(session)

    def _mutate_session(token: str, fn) -> dict:
        try:
            session = store.mutate(token, fn)
        except sessions.UnknownTokenError as exc:
            raise _not_found(str(exc)) from exc
        except sessions.UnknownSessionPageError as exc:
            raise _bad_request(str(exc)) from exc
        return sessions.session_to_document(session)

    @app.post("/session/{token}/rate")
    async def rate_endpoint(token: str, body: dict):
        doc_id = _body_id(body)
        return _mutate_session(token, lambda s: sessions.rate(s, doc_id))

    @app.post("/session/{token}/unrate")
    async def unrate_endpoint(token: str, body: dict):
        doc_id = _body_id(body)
        return _mutate_session(token, lambda s: sessions.unrate(s, doc_id))

    @app.post("/session/{token}/expand")
    async def expand_endpoint(token: str, body: dict):
        doc_id = _body_id(body)
        if doc_id not in corpus:
            raise _bad_request(f"no page with id {doc_id}")
        neighbors = neighbors_to_document(corpus, doc_id)

        def apply(session: sessions.Session) -> sessions.Session:
            if doc_id not in session.seen:
                raise sessions.UnknownSessionPageError(
                    f"id {doc_id} is not part of this session's results"
                )
            return sessions.add_seen(session, [*neighbors["out_links"], *neighbors["in_links"]])

        session_doc = _mutate_session(token, apply)
        return {"neighbors": neighbors, "session": session_doc}

    @app.post("/session/import")
    async def import_session(body: dict):
        try:
            session = sessions.session_from_document(body)
        except sessions.UnsupportedVersionError as exc:
            raise _bad_request(str(exc)) from exc
        except sessions.MalformedSessionFileError as exc:
            raise _bad_request(str(exc)) from exc
        token = store.create(session)
        return {"token": token, "session": sessions.session_to_document(session)}

    return app


def load_manifest(path: str | Path) -> dict:
    """Read a corpus manifest; relative paths resolve against its folder."""
    path = Path(path)
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise CorpusError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CorpusError(f"manifest {path} is not valid JSON: {exc}") from exc
    required = ("documents", "links", "categories", "membership")
    missing = [key for key in required if key not in manifest]
    if missing:
        raise CorpusError(f"manifest {path} is missing keys: {missing}")
    resolved = {key: str((path.parent / manifest[key]).resolve()) for key in required}
    if "listen" in manifest:
        resolved["listen"] = manifest["listen"]
    return resolved


def corpus_from_manifest(path: str | Path) -> Corpus:
    manifest = load_manifest(path)
    return load_corpus(
        manifest["documents"], manifest["links"], manifest["categories"], manifest["membership"]
    )


def resolve_listen(flag: str | None, manifest: dict | None = None) -> str:
    """Listen address precedence: CLI flag, RELTERMS_LISTEN, manifest, default."""
    if flag:
        return flag
    env = os.environ.get("RELTERMS_LISTEN")
    if env:
        return env
    if manifest and manifest.get("listen"):
        return manifest["listen"]
    return DEFAULT_LISTEN
