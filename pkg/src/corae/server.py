"""HTTP front: participant URLs, session bundles, media with range
requests, and log ingestion.

Routes (API versioned under /api/v1/):

    GET  /annotate/{token}            dashboard page
    GET  /api/v1/session/{token}      session bundle JSON
    POST /api/v1/session/{token}/log  canonical log body -> validation report
    GET  /media/{project}/{file}      media file, Range honored
    GET  /static/{path}               dashboard assets (when configured)

TLS and authentication are out of scope: possession of a session token is
the only credential, and a reverse proxy terminates TLS in deployment.
"""

from __future__ import annotations

import json
import mimetypes
import re
import threading
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .codec import CodecError
from .store import (
    LogMismatchError,
    ProjectStore,
    RejectedLogError,
    StoreError,
    TokenConsumedError,
    UnknownTokenError,
)

MAX_LOG_BYTES = 64 * 1024 * 1024

_SESSION_RE = re.compile(r"^/api/v1/session/([A-Za-z0-9_\-]+)$")
_INGEST_RE = re.compile(r"^/api/v1/session/([A-Za-z0-9_\-]+)/log$")
_ANNOTATE_RE = re.compile(r"^/annotate/([A-Za-z0-9_\-]+)$")
_MEDIA_RE = re.compile(r"^/media/([^/]+)/(.+)$")
_STATIC_RE = re.compile(r"^/static/(.+)$")
_RANGE_RE = re.compile(r"^bytes=(\d*)-(\d*)$")

_FALLBACK_PAGE = """<!doctype html>
<html>
<head><meta charset="utf-8"><title>corae</title></head>
<body>
<h1>corae annotation session</h1>
<p>This server has no dashboard frontend installed. Point the server's
static_dir at a dashboard build, or fetch the session bundle from
<code>/api/v1/session/&lt;token&gt;</code>.</p>
</body>
</html>
"""


def parse_range(header: str, size: int) -> tuple[int, int] | None:
    """First and last byte of a single-range header, or None if unusable."""
    m = _RANGE_RE.match(header.strip())
    if not m or size == 0:
        return None
    start_s, end_s = m.groups()
    if start_s == "" and end_s == "":
        return None
    if start_s == "":
        # Suffix form: last N bytes.
        length = int(end_s)
        if length == 0:
            return None
        return max(0, size - length), size - 1
    start = int(start_s)
    if start >= size:
        return None
    end = int(end_s) if end_s else size - 1
    return start, min(end, size - 1)


class CoraeRequestHandler(BaseHTTPRequestHandler):
    server_version = "corae/0.1"
    protocol_version = "HTTP/1.1"

    @property
    def store(self) -> ProjectStore:
        return self.server.store

    def log_message(self, fmt, *args):
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    # -- helpers ----------------------------------------------------------

    def _send_json(self, status: int, payload: dict) -> None:
        body = (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_bytes(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_file(self, path: Path, *, head_only: bool = False) -> None:
        size = path.stat().st_size
        ctype = mimetypes.guess_type(path.name)[0] or "application/octet-stream"
        range_header = self.headers.get("Range")
        start, end = 0, size - 1
        if range_header:
            span = parse_range(range_header, size)
            if span is None:
                self.send_response(HTTPStatus.REQUESTED_RANGE_NOT_SATISFIABLE)
                self.send_header("Content-Range", f"bytes */{size}")
                self.send_header("Content-Length", "0")
                self.end_headers()
                return
            start, end = span
            self.send_response(HTTPStatus.PARTIAL_CONTENT)
            self.send_header("Content-Range", f"bytes {start}-{end}/{size}")
        else:
            self.send_response(HTTPStatus.OK)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(end - start + 1))
        self.send_header("Accept-Ranges", "bytes")
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        if head_only:
            return
        with open(path, "rb") as fh:
            fh.seek(start)
            remaining = end - start + 1
            while remaining > 0:
                chunk = fh.read(min(64 * 1024, remaining))
                if not chunk:
                    break
                self.wfile.write(chunk)
                remaining -= len(chunk)

    def _resolve_under(self, root: Path, relative: str) -> Path | None:
        try:
            target = (root / relative).resolve()
            root = root.resolve()
        except OSError:
            return None
        if root != target and root not in target.parents:
            return None
        return target if target.is_file() else None

    def _not_found(self, what: str) -> None:
        self._send_json(HTTPStatus.NOT_FOUND, {"error": what})

    # -- verbs ---------------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(HTTPStatus.NO_CONTENT)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_HEAD(self):
        self.do_GET(head_only=True)

    def do_GET(self, head_only: bool = False):
        path = self.path.split("?", 1)[0]

        m = _SESSION_RE.match(path)
        if m:
            try:
                bundle = self.store.get_session_bundle(m.group(1))
            except UnknownTokenError:
                return self._not_found("unknown session token")
            return self._send_json(HTTPStatus.OK, bundle)

        m = _ANNOTATE_RE.match(path)
        if m:
            try:
                self.store.find_token(m.group(1))
            except UnknownTokenError:
                return self._not_found("unknown session token")
            static_dir = getattr(self.server, "static_dir", None)
            if static_dir is not None:
                index = Path(static_dir) / "index.html"
                if index.is_file():
                    return self._send_file(index, head_only=head_only)
            return self._send_bytes(
                HTTPStatus.OK, _FALLBACK_PAGE.encode(), "text/html; charset=utf-8"
            )

        m = _MEDIA_RE.match(path)
        if m:
            project_id, filename = m.groups()
            target = self._resolve_under(self.store.media_dir(project_id), filename)
            if target is None:
                return self._not_found("no such media file")
            return self._send_file(target, head_only=head_only)

        m = _STATIC_RE.match(path)
        if m:
            static_dir = getattr(self.server, "static_dir", None)
            target = self._resolve_under(Path(static_dir), m.group(1)) if static_dir else None
            if target is None:
                return self._not_found("no such asset")
            return self._send_file(target, head_only=head_only)

        self._not_found("no such route")

    def do_POST(self):
        m = _INGEST_RE.match(self.path.split("?", 1)[0])
        if not m:
            return self._not_found("no such route")
        token = m.group(1)
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            length = -1
        if length <= 0 or length > MAX_LOG_BYTES:
            return self._send_json(
                HTTPStatus.BAD_REQUEST, {"accepted": False, "error": "bad content length"}
            )
        data = self.rfile.read(length)
        try:
            report = self.store.ingest(token, data)
        except UnknownTokenError:
            return self._not_found("unknown session token")
        except TokenConsumedError as exc:
            return self._send_json(
                HTTPStatus.CONFLICT, {"accepted": False, "error": str(exc)}
            )
        except RejectedLogError as exc:
            return self._send_json(
                HTTPStatus.BAD_REQUEST,
                {"accepted": False, **exc.report.as_dict()},
            )
        except (CodecError, LogMismatchError) as exc:
            return self._send_json(
                HTTPStatus.BAD_REQUEST, {"accepted": False, "error": str(exc)}
            )
        except StoreError as exc:
            return self._send_json(
                HTTPStatus.INTERNAL_SERVER_ERROR, {"accepted": False, "error": str(exc)}
            )
        self._send_json(HTTPStatus.OK, {"accepted": True, **report.as_dict()})


class CoraeServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(
        self,
        address: tuple[str, int],
        store: ProjectStore,
        static_dir: str | Path | None = None,
        verbose: bool = False,
    ):
        super().__init__(address, CoraeRequestHandler)
        self.store = store
        self.static_dir = Path(static_dir) if static_dir else None
        self.verbose = verbose

    @property
    def url(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"

    def start_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.serve_forever, daemon=True)
        thread.start()
        return thread


def load_config(path: str | Path) -> dict[str, str]:
    """Plain-text ``key = value`` server configuration."""
    config: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        config[key.strip()] = value.strip()
    return config


def parse_listen(listen: str) -> tuple[str, int]:
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"listen address must be host:port, got {listen!r}")
    return host, int(port)
