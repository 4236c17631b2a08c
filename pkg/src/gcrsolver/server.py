"""HTTP wire API over one solved family.

Endpoints (JSON bodies; infinite values serialize as null):

    GET    /game                  game metadata, graph, variant, placement
    GET    /values                full label table with optimal moves
    GET    /state/{id}            state detail + legal moves with values
    POST   /session               {"start_state": id, "human_side": 1|2}
    GET    /session/{id}          current session view
    POST   /session/{id}/move     {"successor_id": id}
    DELETE /session/{id}

Solver data is immutable and shared; sessions hold only their own history
and apply moves under a lock.
"""

import json
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from gcrsolver.family import EVADER, INFINITY, PURSUER, GameFamily
from gcrsolver.solver import (
    LabelTable,
    PositionalStrategy,
    placement_minimax,
)


def wire_value(v):
    """Game value -> JSON: plain int, or null for the infinite value."""
    return None if v == INFINITY else int(v)


def pursuer_tokens(family: GameFamily, loc: int) -> list:
    """Vertices occupied by the pursuer side for a raw location index,
    decoded per variant (team tuples, speed phase bit)."""
    meta = family.metadata
    variant = meta.get("variant")
    if variant == "k_cops":
        n = meta["graph"]["vertices"]
        c = meta["parameters"]["cops"]
        team = []
        for _ in range(c):
            loc, v = divmod(loc, n)
            team.append(v)
        return list(reversed(team))
    if variant == "speed2_pursuer":
        return [loc // 2]
    return [loc]


def pursuer_phase(family: GameFamily, loc: int):
    if family.metadata.get("variant") == "speed2_pursuer":
        return loc % 2
    return None


@dataclass
class GameSession:
    session_id: str
    human_side: int
    states: list = field(default_factory=list)
    evasion_certified: bool = False

    @property
    def machine_side(self) -> int:
        return EVADER if self.human_side == PURSUER else PURSUER


class SolvedGame:
    """Read-only bundle the API serves from."""

    def __init__(self, family: GameFamily, labels: LabelTable,
                 strategies: tuple[PositionalStrategy, PositionalStrategy]):
        self.family = family
        self.labels = labels
        self.sigma1, self.sigma2 = strategies
        self.placement = placement_minimax(family, labels)
        self.evasion_horizon = 2 * family.regular_count
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    # -- documents ---------------------------------------------------------

    def game_document(self) -> dict:
        fam = self.family
        return {
            "locations1": fam.loc1_count,
            "locations2": fam.loc2_count,
            "state_count": fam.state_count,
            "regular_count": fam.regular_count,
            "capture": fam.capture_ids(),
            "metadata": fam.metadata,
            "placement": {
                "value": wire_value(self.placement.value),
                "cop_placement": self.placement.cop_placement,
                "robber_best_response": self.placement.robber_best_response,
            },
            "evasion_horizon": self.evasion_horizon,
        }

    def values_document(self) -> dict:
        fam = self.family
        states = []
        for sid in range(fam.state_count):
            st = fam.state(sid)
            rec = {
                "id": sid,
                "pursuer_loc": st.pursuer_loc,
                "evader_loc": st.evader_loc,
                "mover": st.mover,
                "value": wire_value(self.labels.value[sid]),
                "finitized_at": wire_value(self.labels.finitized_at[sid]),
                "optimal_move": self._optimal_move(sid),
            }
            states.append(rec)
        return {"iterations_run": self.labels.iterations_run, "states": states}

    def _optimal_move(self, sid: int):
        if sid == self.family.tau or self.family.is_capture(sid):
            return None
        table = self.sigma1 if sid % 2 == 0 else self.sigma2
        return table.choice.get(sid)

    def state_document(self, sid: int) -> dict:
        fam = self.family
        st = fam.state(sid)
        doc = {
            "id": sid,
            "terminal": st.terminal,
            "pursuer_loc": st.pursuer_loc,
            "evader_loc": st.evader_loc,
            "mover": st.mover,
            "is_capture": fam.is_capture(sid),
            "value": wire_value(self.labels.value[sid]),
        }
        if not st.terminal:
            doc["pursuer_tokens"] = pursuer_tokens(fam, st.pursuer_loc)
            doc["pursuer_phase"] = pursuer_phase(fam, st.pursuer_loc)
            doc["evader_vertex"] = st.evader_loc
        optimal = self._optimal_move(sid)
        moves = []
        for t in fam.successors(sid):
            ts = fam.state(t)
            move = {
                "id": t,
                "terminal": ts.terminal,
                "pursuer_loc": ts.pursuer_loc,
                "evader_loc": ts.evader_loc,
                "mover": ts.mover,
                "is_capture": fam.is_capture(t),
                "value": wire_value(self.labels.value[t]),
                "optimal": t == optimal,
            }
            if not ts.terminal:
                move["pursuer_tokens"] = pursuer_tokens(fam, ts.pursuer_loc)
            moves.append(move)
        doc["moves"] = moves
        return doc

    # -- sessions ------------------------------------------------------------

    def create_session(self, start_state: int, human_side: int) -> tuple[dict, list]:
        if not isinstance(start_state, int) or not 0 <= start_state < self.family.state_count:
            raise ApiError(400, f"start_state {start_state!r} out of range")
        if start_state == self.family.tau:
            raise ApiError(400, "cannot start a session at the terminal state")
        if human_side not in (PURSUER, EVADER):
            raise ApiError(400, "human_side must be 1 or 2")
        session = GameSession(
            session_id=uuid.uuid4().hex,
            human_side=human_side,
            states=[start_state],
        )
        with self._lock:
            machine_moves = self._advance_machine(session)
            self._sessions[session.session_id] = session
            return self.session_document(session, machine_moves), machine_moves

    def get_session(self, session_id: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session {session_id!r}")
        return session

    def delete_session(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise ApiError(404, f"unknown session {session_id!r}")
            del self._sessions[session_id]

    def apply_human_move(self, session_id: str, successor_id) -> tuple[dict, list]:
        session = self.get_session(session_id)
        fam = self.family
        with self._lock:
            current = session.states[-1]
            if self._game_over(session):
                raise ApiError(409, "the game is already over")
            if fam.mover_of(current) != session.human_side:
                raise ApiError(409, "it is not the human's turn")
            if not isinstance(successor_id, int) or successor_id not in fam.successors(current):
                raise ApiError(
                    400,
                    f"illegal move: state {current} has no successor {successor_id!r}",
                )
            session.states.append(successor_id)
            machine_moves = self._advance_machine(session)
            return self.session_document(session, machine_moves), machine_moves

    def _game_over(self, session: GameSession) -> bool:
        return self.family.is_capture(session.states[-1]) or session.evasion_certified

    def _advance_machine(self, session: GameSession) -> list:
        """Let the optimal side reply until it is the human's turn or the
        game ended; certifies evasion at the horizon."""
        fam = self.family
        applied = []
        while True:
            current = session.states[-1]
            if fam.is_capture(current):
                break
            if len(session.states) - 1 >= self.evasion_horizon:
                session.evasion_certified = True
                break
            if fam.mover_of(current) != session.machine_side:
                break
            table = self.sigma1 if session.machine_side == PURSUER else self.sigma2
            nxt = table.move(current)
            session.states.append(nxt)
            applied.append(nxt)
        return applied

    def session_document(self, session: GameSession, machine_moves: list | None = None) -> dict:
        current = session.states[-1]
        captured = self.family.is_capture(current)
        doc = {
            "session_id": session.session_id,
            "human_side": session.human_side,
            "machine_side": session.machine_side,
            "history": list(session.states),
            "state": self.state_document(current),
            "captured": captured,
            "capture_time": len(session.states) - 1 if captured else None,
            "evasion_certified": session.evasion_certified,
        }
        if machine_moves is not None:
            doc["machine_moves"] = machine_moves
        return doc


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


def make_handler(game: SolvedGame, ui_dir: str | None = None):
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send_json(self, status: int, doc) -> None:
            body = json.dumps(doc).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _read_json(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                raise ApiError(400, "expected a JSON body")
            try:
                doc = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ApiError(400, f"body is not valid JSON: {exc}")
            if not isinstance(doc, dict):
                raise ApiError(400, "body must be a JSON object")
            return doc

        def _route(self, method: str) -> None:
            try:
                self._dispatch(method)
            except ApiError as exc:
                self._send_json(exc.status, {"error": exc.message})
            except Exception as exc:  # pragma: no cover - defensive
                self._send_json(500, {"error": f"internal error: {exc}"})

        def _dispatch(self, method: str) -> None:
            path = self.path.split("?", 1)[0].rstrip("/") or "/"
            parts = [p for p in path.split("/") if p]

            if method == "GET" and path == "/game":
                return self._send_json(200, game.game_document())
            if method == "GET" and path == "/values":
                return self._send_json(200, game.values_document())
            if method == "GET" and len(parts) == 2 and parts[0] == "state":
                sid = self._int_part(parts[1], "state id")
                if not 0 <= sid < game.family.state_count:
                    raise ApiError(404, f"no state {sid}")
                return self._send_json(200, game.state_document(sid))
            if parts and parts[0] == "session":
                return self._session_routes(method, parts)
            if method == "GET" and ui_root is not None:
                return self._serve_static(path)
            if method == "GET" and path == "/":
                return self._send_json(
                    200,
                    {
                        "endpoints": [
                            "GET /game",
                            "GET /values",
                            "GET /state/{id}",
                            "POST /session",
                            "GET /session/{id}",
                            "POST /session/{id}/move",
                            "DELETE /session/{id}",
                        ]
                    },
                )
            raise ApiError(404, f"no route for {method} {path}")

        def _session_routes(self, method: str, parts: list) -> None:
            if method == "POST" and len(parts) == 1:
                body = self._read_json()
                doc, _ = game.create_session(
                    body.get("start_state"), body.get("human_side")
                )
                return self._send_json(201, doc)
            if len(parts) >= 2:
                session_id = parts[1]
                if method == "GET" and len(parts) == 2:
                    session = game.get_session(session_id)
                    return self._send_json(200, game.session_document(session))
                if method == "DELETE" and len(parts) == 2:
                    game.delete_session(session_id)
                    return self._send_json(200, {"deleted": True})
                if method == "POST" and len(parts) == 3 and parts[2] == "move":
                    body = self._read_json()
                    doc, _ = game.apply_human_move(session_id, body.get("successor_id"))
                    return self._send_json(200, doc)
            raise ApiError(404, f"no route for {method} {self.path}")

        @staticmethod
        def _int_part(raw: str, what: str) -> int:
            try:
                return int(raw)
            except ValueError:
                raise ApiError(400, f"{what} must be an integer, got {raw!r}")

        def _serve_static(self, path: str) -> None:
            rel = path.lstrip("/") or "index.html"
            target = (ui_root / rel).resolve()
            if not str(target).startswith(str(ui_root)) or not target.is_file():
                raise ApiError(404, f"no file {path!r}")
            body = target.read_bytes()
            ctype = {
                ".html": "text/html",
                ".js": "text/javascript",
                ".css": "text/css",
                ".svg": "image/svg+xml",
                ".json": "application/json",
            }.get(target.suffix, "application/octet-stream")
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            self._route("GET")

        def do_POST(self):
            self._route("POST")

        def do_DELETE(self):
            self._route("DELETE")

    return Handler


def make_server(
    game: SolvedGame, host: str = "127.0.0.1", port: int = 8128, ui_dir: str | None = None
) -> ThreadingHTTPServer:
    """Bind and return the server (caller runs serve_forever)."""
    handler = make_handler(game, ui_dir)
    return ThreadingHTTPServer((host, port), handler)
