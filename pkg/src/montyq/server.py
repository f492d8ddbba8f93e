"""HTTP session service: turn-by-turn play of any catalog game plus
stateless analysis endpoints mirroring the CLI envelope.

Sessions live in memory, keyed by unguessable tokens, and expire after
an idle timeout. The prize door is sampled at creation from the game's
prize distribution; the host's reveal is sampled lazily at pick time.
Nothing about the prize is serialized to the client before the session
finishes.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from random import Random

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse

from . import games
from .cli import ValidationFailure, analysis_envelope, parse_rational
from .engine import GameSpec, enumerate_joint, simulate

DEFAULT_IDLE_TIMEOUT = 3600.0

GAME_CATALOG = [
    {"name": "classic", "doors": 3, "params": []},
    {"name": "ignorant", "doors": 3, "params": []},
    {"name": "psi-ontic", "doors": 4,
     "params": [{"name": "state", "type": "int", "default": 1}]},
    {"name": "psi-epistemic", "doors": 4,
     "params": [{"name": "q1", "type": "rational", "required": True},
                {"name": "q2", "type": "rational", "required": True},
                {"name": "q3", "type": "rational", "required": True},
                {"name": "state", "type": "int", "default": 1}]},
]


def _sample(rng: Random, dist: dict[int, Fraction]) -> int:
    u = Fraction(rng.random())
    acc = Fraction(0)
    last = None
    for door in sorted(dist):
        p = dist[door]
        if p == 0:
            continue
        acc += p
        last = door
        if u < acc:
            return door
    return last  # float slack; only reachable with probability ~0


@dataclass
class Session:
    id: str
    game: str
    params: dict
    spec: GameSpec
    seed: int
    rng: Random
    prize_door: int
    phase: str = "awaiting_pick"
    picked: int | None = None
    revealed: int | None = None
    decision: str | None = None
    outcome: str | None = None
    created: float = field(default_factory=time.monotonic)
    touched: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def public_view(self) -> dict:
        view = {
            "id": self.id,
            "game": self.game,
            "params": self.params,
            "door_count": self.spec.door_count,
            "phase": self.phase,
            "picked": self.picked,
            "revealed": self.revealed,
            "decision": self.decision,
        }
        if self.phase == "finished":
            view["outcome"] = self.outcome
            view["prize_door"] = self.prize_door
            view["seed"] = self.seed
        return view


class SessionStore:
    def __init__(self, idle_timeout: float = DEFAULT_IDLE_TIMEOUT):
        self.idle_timeout = idle_timeout
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise KeyError(session_id)
            now = time.monotonic()
            if now - session.touched > self.idle_timeout:
                del self._sessions[session_id]
                raise KeyError(session_id)
            session.touched = now
            return session

    def purge_idle(self) -> None:
        # amortized: a full scan only every 4096 calls
        self._purge_countdown = getattr(self, "_purge_countdown", 0) - 1
        if self._purge_countdown > 0:
            return
        self._purge_countdown = 4096
        cutoff = time.monotonic() - self.idle_timeout
        with self._lock:
            stale = [sid for sid, s in self._sessions.items()
                     if s.touched < cutoff]
            for sid in stale:
                del self._sessions[sid]


def _parse_params(game: str, params: dict) -> dict:
    kwargs: dict = {"state": int(params.get("state", 1))}
    if game == "psi-epistemic":
        for name in ("q1", "q2", "q3"):
            if name not in params:
                raise ValidationFailure(f"psi-epistemic requires {name}")
            kwargs[name] = parse_rational(str(params[name]))
    return kwargs


def create_app(transcript_path: str | None = None,
               idle_timeout: float = DEFAULT_IDLE_TIMEOUT,
               static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="montyq session service")
    store = SessionStore(idle_timeout)
    tallies: dict[tuple[str, str], dict[str, int]] = {}
    tallies_lock = threading.Lock()
    transcript_lock = threading.Lock()

    def log_event(event: dict) -> None:
        if not transcript_path:
            return
        with transcript_lock:
            with open(transcript_path, "a") as fh:
                fh.write(json.dumps(event) + "\n")

    def bad_request(message: str) -> HTTPException:
        return HTTPException(status_code=400, detail=message)

    def load_session(session_id: str) -> Session:
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404,
                                detail=f"unknown session {session_id}")

    @app.get("/games")
    async def list_games() -> dict:
        return {"games": GAME_CATALOG}

    @app.get("/analysis")
    async def analysis(game: str, q1: str | None = None, q2: str | None = None,
                 q3: str | None = None, state: int = 1) -> dict:
        raw = {"state": state}
        for name, val in (("q1", q1), ("q2", q2), ("q3", q3)):
            if val is not None:
                raw[name] = val
        try:
            kwargs = _parse_params(game, raw)
            env = analysis_envelope(game, **kwargs)
        except ValidationFailure as exc:
            raise bad_request(str(exc))
        return env.to_json()

    @app.get("/stats")
    async def stats(game: str, q1: str | None = None, q2: str | None = None,
              q3: str | None = None, state: int = 1) -> dict:
        raw = {"state": state}
        for name, val in (("q1", q1), ("q2", q2), ("q3", q3)):
            if val is not None:
                raw[name] = val
        try:
            kwargs = _parse_params(game, raw)
            analysis_json = analysis_envelope(game, **kwargs).to_json()
        except ValidationFailure as exc:
            raise bad_request(str(exc))
        with tallies_lock:
            empirical = {
                strategy: dict(counts)
                for (g, strategy), counts in tallies.items() if g == game
            }
        return {"game": game, "exact": analysis_json["exact_results"],
                "empirical": empirical}

    @app.post("/simulate")
    async def simulate_endpoint(body: dict) -> dict:
        game = body.get("game")
        strategy = body.get("strategy", "switch")
        trials = int(body.get("trials", 10_000))
        seed = int(body.get("seed", 0))
        if trials < 1 or trials > 10_000_000:
            raise bad_request("trials must be in 1..10^7")
        try:
            kwargs = _parse_params(game, body.get("params", {}))
            spec = games.make_game(game, **kwargs)
        except (ValidationFailure, ValueError) as exc:
            raise bad_request(str(exc))
        report = simulate(spec, strategy, trials, seed)
        return report.to_json()

    @app.post("/sessions")
    async def create_session(body: dict) -> dict:
        game = body.get("game")
        try:
            kwargs = _parse_params(game or "", body.get("params", {}))
            spec = games.make_game(game, **kwargs)
        except (ValidationFailure, ValueError) as exc:
            raise bad_request(str(exc))
        seed = body.get("seed")
        seed = int(seed) if seed is not None else secrets.randbits(63)
        rng = Random(seed)
        prize = _sample(rng, spec.prize_dist)
        session = Session(
            id=secrets.token_urlsafe(16),
            game=game,
            params={k: str(v) for k, v in body.get("params", {}).items()},
            spec=spec,
            seed=seed,
            rng=rng,
            prize_door=prize,
        )
        store.add(session)
        store.purge_idle()
        log_event({"event": "create", "session": session.id, "game": game,
                   "seed": seed})
        return {"id": session.id, "game": game,
                "door_count": spec.door_count, "params": session.params,
                "phase": session.phase}

    @app.post("/sessions/{session_id}/pick")
    async def pick(session_id: str, body: dict) -> dict:
        session = load_session(session_id)
        door = body.get("door")
        with session.lock:
            if session.phase != "awaiting_pick":
                raise HTTPException(
                    status_code=409,
                    detail=f"cannot pick in phase {session.phase}")
            if not isinstance(door, int) or not (
                    1 <= door <= session.spec.door_count):
                raise bad_request(f"door must be in 1..{session.spec.door_count}")
            session.picked = door
            host_row = {
                k: session.spec.host(session.prize_door, door, k)
                for k in session.spec.doors
                if session.spec.host(session.prize_door, door, k) > 0
            }
            revealed = _sample(session.rng, host_row)
            session.revealed = revealed
            if revealed == session.prize_door:
                session.phase = "finished"
                session.outcome = "host_opened_prize"
                reveal_kind = "prize"
            else:
                session.phase = "awaiting_decision"
                reveal_kind = "goat"
            log_event({"event": "pick", "session": session.id, "door": door,
                       "revealed": revealed, "kind": reveal_kind})
            out = {"revealed_door": revealed, "revealed": reveal_kind,
                   "phase": session.phase}
            if session.phase == "finished":
                out["outcome"] = session.outcome
                out["prize_door"] = session.prize_door
                out["seed"] = session.seed
            return out

    @app.post("/sessions/{session_id}/decision")
    async def decide(session_id: str, body: dict) -> dict:
        session = load_session(session_id)
        action = body.get("action")
        with session.lock:
            if session.phase != "awaiting_decision":
                raise HTTPException(
                    status_code=409,
                    detail=f"cannot decide in phase {session.phase}")
            if action == "stick":
                final = session.picked
                session.decision = "stick"
            elif action == "switch":
                target = body.get("switch_to")
                if (not isinstance(target, int)
                        or not (1 <= target <= session.spec.door_count)
                        or target in (session.picked, session.revealed)):
                    raise bad_request(
                        "switch_to must be an unopened, unpicked door")
                final = target
                session.decision = f"switch:{target}"
            else:
                raise bad_request("action must be 'stick' or 'switch'")
            session.outcome = ("win" if final == session.prize_door
                               else "lose")
            session.phase = "finished"
            strategy = "stick" if action == "stick" else "switch"
            with tallies_lock:
                counts = tallies.setdefault(
                    (session.game, strategy),
                    {"plays": 0, "wins": 0})
                counts["plays"] += 1
                if session.outcome == "win":
                    counts["wins"] += 1
            log_event({"event": "decision", "session": session.id,
                       "action": action, "final": final,
                       "outcome": session.outcome,
                       "prize_door": session.prize_door})
            return {"outcome": session.outcome,
                    "prize_door": session.prize_door,
                    "seed": session.seed, "phase": session.phase}

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str) -> dict:
        session = load_session(session_id)
        with session.lock:
            return session.public_view()

    if static_dir:
        static = Path(static_dir)
        if static.is_dir():
            from fastapi.staticfiles import StaticFiles

            @app.get("/")
            async def index() -> FileResponse:
                return FileResponse(static / "index.html")

            app.mount("/assets", StaticFiles(directory=static), name="assets")

    return app
