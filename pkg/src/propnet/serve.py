"""Read-only HTTP API over a bundle of graph documents.

Endpoints:
  GET /api/networks            list of {id, kind, language, translator}
  GET /api/network/{id}        the full document
  GET /api/search?net=&q=&k=   fuzzy node search within one network

Everything else is static file serving (the explorer UI assets).  All
shared state is immutable after startup, so concurrent requests are safe;
shutdown is graceful on SIGINT/SIGTERM.
"""

from __future__ import annotations

import json
import mimetypes
import signal
import sys
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, unquote, urlparse

from . import search as searchmod
from .export import document_bytes, load_bundle

_FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>propnet</title></head>
<body><h1>propnet API</h1>
<p>No UI assets installed. Endpoints: <a href="/api/networks">/api/networks</a>,
/api/network/{id}, /api/search?net=&amp;q=&amp;k=</p></body></html>
"""


class NetworkService:
    """Immutable bundle snapshot: documents plus per-network search indexes."""

    def __init__(self, bundle_dir: Path, ui_dir: Optional[Path] = None):
        self.bundle_dir = Path(bundle_dir)
        self.ui_dir = Path(ui_dir) if ui_dir else None
        self.documents = load_bundle(self.bundle_dir)
        self.doc_bytes = {doc_id: document_bytes(doc) for doc_id, doc in self.documents.items()}
        self.indexes = {
            doc_id: searchmod.build_index({n["id"]: n["label"] for n in doc["nodes"]})
            for doc_id, doc in self.documents.items()
            if doc["nodes"]
        }

    def listing(self) -> list[dict]:
        out = []
        for doc_id in sorted(self.documents):
            meta = self.documents[doc_id]["meta"]
            out.append(
                {
                    "id": doc_id,
                    "kind": meta["kind"],
                    "language": meta["language"],
                    "translator": meta["translator"],
                    "nodes": len(self.documents[doc_id]["nodes"]),
                    "edges": len(self.documents[doc_id]["edges"]),
                }
            )
        return out


class _Handler(BaseHTTPRequestHandler):
    server: "PropnetServer"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default; stderr belongs to logs
        if self.server.verbose:
            sys.stderr.write("%s - %s\n" % (self.address_string(), fmt % args))

    def _send(self, status: int, payload: bytes, content_type: str):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _json(self, status: int, obj) -> None:
        payload = (json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n").encode("utf-8")
        self._send(status, payload, "application/json; charset=utf-8")

    def _error(self, status: int, message: str) -> None:
        self._json(status, {"error": message})

    def do_GET(self):
        service = self.server.service
        url = urlparse(self.path)
        path = unquote(url.path)
        if path == "/api/networks":
            return self._json(200, service.listing())
        if path.startswith("/api/network/"):
            doc_id = path[len("/api/network/") :]
            payload = service.doc_bytes.get(doc_id)
            if payload is None:
                return self._error(404, f"unknown network {doc_id!r}")
            return self._send(200, payload, "application/json; charset=utf-8")
        if path == "/api/search":
            return self._search(parse_qs(url.query))
        if path.startswith("/api/"):
            return self._error(404, f"unknown endpoint {path!r}")
        return self._static(path)

    def _search(self, params) -> None:
        net = params.get("net", [None])[0]
        q = params.get("q", [None])[0]
        raw_k = params.get("k", ["10"])[0]
        if not net or q is None:
            return self._error(400, "search needs net= and q= parameters")
        try:
            k = int(raw_k)
        except ValueError:
            return self._error(400, f"k must be an integer, got {raw_k!r}")
        if k < 1:
            return self._error(400, "k must be >= 1")
        if net not in self.server.service.documents:
            return self._error(404, f"unknown network {net!r}")
        index = self.server.service.indexes.get(net)
        results = searchmod.query(index, q, k) if index else []
        return self._json(
            200,
            {
                "net": net,
                "query": q,
                "results": [{"id": node_id, "score": score} for node_id, score in results],
            },
        )

    def _static(self, path: str) -> None:
        ui_dir = self.server.service.ui_dir
        if path in ("", "/"):
            path = "/index.html"
        if ui_dir is None:
            if path == "/index.html":
                return self._send(200, _FALLBACK_PAGE.encode("utf-8"), "text/html; charset=utf-8")
            return self._error(404, f"no static asset {path!r}")
        candidate = (ui_dir / path.lstrip("/")).resolve()
        if not str(candidate).startswith(str(ui_dir.resolve())) or not candidate.is_file():
            return self._error(404, f"no static asset {path!r}")
        ctype = mimetypes.guess_type(candidate.name)[0] or "application/octet-stream"
        self._send(200, candidate.read_bytes(), ctype)


class PropnetServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, service: NetworkService, verbose: bool = False):
        self.service = service
        self.verbose = verbose
        super().__init__(address, _Handler)


def make_server(
    bundle_dir: Path,
    host: str = "127.0.0.1",
    port: int = 8137,
    ui_dir: Optional[Path] = None,
    verbose: bool = False,
) -> PropnetServer:
    service = NetworkService(bundle_dir, ui_dir)
    return PropnetServer((host, port), service, verbose=verbose)


def serve(
    bundle_dir: Path,
    host: str = "127.0.0.1",
    port: int = 8137,
    ui_dir: Optional[Path] = None,
) -> None:
    """Run until SIGINT/SIGTERM, then shut down cleanly."""
    server = make_server(bundle_dir, host, port, ui_dir, verbose=True)
    stop = threading.Event()

    def _handle(signum, frame):
        stop.set()
        threading.Thread(target=server.shutdown, daemon=True).start()

    signal.signal(signal.SIGINT, _handle)
    signal.signal(signal.SIGTERM, _handle)
    sys.stderr.write(f"serving {len(server.service.documents)} network(s) on http://{host}:{port}\n")
    try:
        server.serve_forever()
    finally:
        server.server_close()
