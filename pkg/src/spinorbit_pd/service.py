"""HTTP JSON API over the game engine, plus static serving of the web UI.

Endpoints:
    GET  /api/strategies            the five named moves with parameters
    POST /api/play                  stateless round: {"a": ..., "b": ...}
    POST /api/session               create a session: {"policy": ..., "strategy"?}
    POST /api/session/{id}/round    play a round: {"a": ...}
    GET  /api/session/{id}          full session state
    GET  /api/sweep?n=41            payoff surface grid for the UI explorer
    GET  /...                       static files from the UI bundle directory

Sessions live in memory only.  Game evaluation is pure; per-session state
is mutated under a lock so concurrent rounds serialize cleanly.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .analysis import best_response, param_to_strategy, t_grid
from .game import (
    BACKENDS,
    NAMED_STRATEGIES,
    STRATEGY_TAGS,
    Outcome,
    PayoffTable,
    Strategy,
    run_protocol,
)
from .optics import CalibrationFailed

_SESSION_ROUND_RE = re.compile(r"^/api/session/([0-9a-f]+)/round$")
_SESSION_RE = re.compile(r"^/api/session/([0-9a-f]+)$")

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
    ".png": "image/png",
}

_PLACEHOLDER_PAGE = b"""<!doctype html>
<html><head><meta charset="utf-8"><title>spinorbit-pd</title></head>
<body><h1>spinorbit-pd service</h1>
<p>The web UI bundle is not built. The JSON API is live under <code>/api/</code>.</p>
<p>Build it with <code>npm install &amp;&amp; npm run build</code> in <code>frontend/</code>,
then restart with <code>--ui frontend/dist</code>.</p></body></html>
"""


class ApiError(Exception):
    def __init__(self, status: int, reason: str):
        super().__init__(reason)
        self.status = status
        self.reason = reason


@dataclass
class Session:
    id: str
    policy: str
    fixed: Strategy | None = None
    history: list[dict] = field(default_factory=list)
    cumulative_a: float = 0.0
    cumulative_b: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def policy_json(self) -> dict:
        out = {"policy": self.policy}
        if self.fixed is not None:
            out["strategy"] = self.fixed.label
        return out


def outcome_json(outcome: Outcome) -> dict:
    return {
        "amplitudes": [{"re": z.real, "im": z.imag} for z in outcome.amplitudes],
        "probs": {
            "cc": float(outcome.probs[0]),
            "cd": float(outcome.probs[1]),
            "dc": float(outcome.probs[2]),
            "dd": float(outcome.probs[3]),
        },
        "payoffs": [outcome.payoff_a, outcome.payoff_b],
    }


class GameServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(
        self,
        address,
        backend: str = "abstract",
        table: PayoffTable | None = None,
        response_grid: int = 101,
        ui_dir: str | None = None,
    ):
        super().__init__(address, _Handler)
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self.table = table or PayoffTable.default()
        self.response_grid = response_grid
        self.ui_dir = Path(ui_dir).resolve() if ui_dir else None
        self.sessions: dict[str, Session] = {}
        self.sessions_lock = threading.Lock()
        self._sweep_cache: dict[int, dict] = {}
        self._sweep_lock = threading.Lock()

    # -- game plumbing -------------------------------------------------

    def parse_strategy(self, text) -> Strategy:
        if not isinstance(text, str):
            raise ApiError(400, "strategy must be a string")
        try:
            return Strategy.parse(text)
        except ValueError as exc:
            raise ApiError(400, str(exc)) from exc

    def opponent_move(self, session: Session, human: Strategy) -> Strategy:
        if session.policy == "nash":
            return Strategy.named("iZ")
        if session.policy == "best_response":
            t, _ = best_response(human, self.response_grid, self.backend, self.table)
            return param_to_strategy(t)
        return session.fixed

    def sweep_grid(self, n: int) -> dict:
        with self._sweep_lock:
            cached = self._sweep_cache.get(n)
            if cached is not None:
                return cached
        ts = [float(t) for t in t_grid(n)]
        strategies = [param_to_strategy(t) for t in ts]
        pay_a = []
        pay_b = []
        for sa in strategies:
            row_a, row_b = [], []
            for sb in strategies:
                outcome = run_protocol(sa, sb, self.backend, self.table)
                row_a.append(outcome.payoff_a)
                row_b.append(outcome.payoff_b)
            pay_a.append(row_a)
            pay_b.append(row_b)
        result = {"n": n, "t": ts, "payoff_a": pay_a, "payoff_b": pay_b}
        with self._sweep_lock:
            self._sweep_cache[n] = result
        return result


class _Handler(BaseHTTPRequestHandler):
    server: GameServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    # -- helpers --------------------------------------------------------

    def _send_json(self, payload, status: int = 200) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, reason: str) -> None:
        self._send_json({"error": reason}, status)

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise ApiError(400, "empty request body")
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ApiError(400, f"bad JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise ApiError(400, "request body must be a JSON object")
        return payload

    def _session(self, session_id: str) -> Session:
        with self.server.sessions_lock:
            session = self.server.sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session {session_id}")
        return session

    # -- routes ---------------------------------------------------------

    def do_GET(self):
        try:
            path, _, query = self.path.partition("?")
            if path == "/api/strategies":
                return self._send_json(
                    [
                        {
                            "name": name,
                            "theta": params.theta,
                            "phi": params.phi,
                            "tag": STRATEGY_TAGS[name],
                        }
                        for name, params in NAMED_STRATEGIES.items()
                    ]
                )
            match = _SESSION_RE.match(path)
            if match:
                session = self._session(match.group(1))
                with session.lock:
                    return self._send_json(
                        {
                            "id": session.id,
                            **session.policy_json(),
                            "history": list(session.history),
                            "cumulative": [session.cumulative_a, session.cumulative_b],
                        }
                    )
            if path == "/api/sweep":
                params = dict(p.split("=", 1) for p in query.split("&") if "=" in p)
                try:
                    n = int(params.get("n", "41"))
                except ValueError as exc:
                    raise ApiError(400, "n must be an integer") from exc
                if not (2 <= n <= 301):
                    raise ApiError(400, "n must be between 2 and 301")
                return self._send_json(self.server.sweep_grid(n))
            if path.startswith("/api/"):
                raise ApiError(404, f"no such endpoint: {path}")
            return self._serve_static(path)
        except ApiError as exc:
            self._send_error_json(exc.status, exc.reason)
        except CalibrationFailed as exc:
            self._send_error_json(500, str(exc))
        except Exception as exc:  # keep responses well-formed on bugs
            self._send_error_json(500, f"internal error: {exc}")

    def do_POST(self):
        try:
            path = self.path.partition("?")[0]
            if path == "/api/play":
                return self._handle_play()
            if path == "/api/session":
                return self._handle_create_session()
            match = _SESSION_ROUND_RE.match(path)
            if match:
                return self._handle_round(match.group(1))
            raise ApiError(404, f"no such endpoint: {path}")
        except ApiError as exc:
            self._send_error_json(exc.status, exc.reason)
        except CalibrationFailed as exc:
            self._send_error_json(500, str(exc))
        except Exception as exc:  # keep responses well-formed on bugs
            self._send_error_json(500, f"internal error: {exc}")

    def _handle_play(self):
        body = self._read_json()
        a = self.server.parse_strategy(body.get("a"))
        b = self.server.parse_strategy(body.get("b"))
        backend = body.get("backend", self.server.backend)
        if backend not in BACKENDS:
            raise ApiError(400, f"unknown backend {backend!r}")
        outcome = run_protocol(a, b, backend, self.server.table)
        self._send_json(outcome_json(outcome))

    def _handle_create_session(self):
        body = self._read_json()
        policy = body.get("policy")
        if policy == "best":
            policy = "best_response"
        if policy not in ("nash", "best_response", "fixed"):
            raise ApiError(400, "policy must be nash, best_response, or fixed")
        fixed = None
        if policy == "fixed":
            fixed = self.server.parse_strategy(body.get("strategy"))
        session = Session(id=uuid.uuid4().hex, policy=policy, fixed=fixed)
        with self.server.sessions_lock:
            self.server.sessions[session.id] = session
        self._send_json({"id": session.id, **session.policy_json()}, status=201)

    def _handle_round(self, session_id: str):
        session = self._session(session_id)
        body = self._read_json()
        human = self.server.parse_strategy(body.get("a"))
        with session.lock:
            opponent = self.server.opponent_move(session, human)
            outcome = run_protocol(human, opponent, self.server.backend, self.server.table)
            session.cumulative_a += outcome.payoff_a
            session.cumulative_b += outcome.payoff_b
            entry = {
                "round": len(session.history) + 1,
                "a": human.label,
                "b": opponent.label,
                **outcome_json(outcome),
                "cumulative": [session.cumulative_a, session.cumulative_b],
            }
            session.history.append(entry)
        self._send_json(entry)

    def _serve_static(self, path: str):
        ui_dir = self.server.ui_dir
        if ui_dir is None:
            if path in ("/", "/index.html"):
                self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(_PLACEHOLDER_PAGE)))
                self.end_headers()
                self.wfile.write(_PLACEHOLDER_PAGE)
                return
            raise ApiError(404, "no UI bundle configured")
        rel = path.lstrip("/") or "index.html"
        target = (ui_dir / rel).resolve()
        if ui_dir not in target.parents and target != ui_dir:
            raise ApiError(404, "not found")
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            raise ApiError(404, f"not found: {path}")
        body = target.read_bytes()
        self.send_response(200)
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def create_server(
    host: str = "127.0.0.1",
    port: int = 8000,
    backend: str = "abstract",
    table: PayoffTable | None = None,
    response_grid: int = 101,
    ui_dir: str | None = None,
) -> GameServer:
    """Build the threaded HTTP server; port 0 picks a free port."""
    return GameServer(
        (host, port),
        backend=backend,
        table=table,
        response_grid=response_grid,
        ui_dir=ui_dir,
    )
