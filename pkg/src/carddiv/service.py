"""HTTP play service for the solitaire engine.

Every rule decision is delegated to the engine's ``legal_moves``: the
service never re-derives legality itself, it just looks the requested move
up. Sessions live in memory keyed by opaque game ids; an optional persist
file snapshots them across restarts. Mutations are serialized per game, so
two clients racing on one game see a consistent move counter.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import Literal

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from .solitaire import COLS, GameState, Status, apply_move, deal, legal_moves


class CellRef(BaseModel):
    row: int = Field(ge=0, le=3)
    col: int = Field(ge=0, le=12)

    def cell(self) -> int:
        return self.row * COLS + self.col


class CreateGameRequest(BaseModel):
    seed: int | None = None
    assist: Literal["AUTO", "MANUAL"]


class MoveRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: CellRef = Field(alias="from")
    to: CellRef | None = None


class CardModel(BaseModel):
    suit: int
    rank: int


class StateModel(BaseModel):
    grid: list[list[CardModel]]
    move_count: int
    status: str
    legal_move_count: int


class GameCreated(BaseModel):
    game_id: str
    state: StateModel


@dataclass
class Session:
    state: GameState
    assist: str
    seed: int
    lock: threading.Lock


class SessionStore:
    """In-memory game_id -> session map with optional JSON snapshots."""

    def __init__(self, persist_path: str | None = None):
        self.persist_path = persist_path
        self.sessions: dict = {}
        self._lock = threading.Lock()

    def create(self, seed: int, assist: str) -> tuple:
        game_id = uuid.uuid4().hex
        session = Session(deal(seed), assist, seed, threading.Lock())
        with self._lock:
            self.sessions[game_id] = session
        return game_id, session

    def get(self, game_id: str) -> Session | None:
        with self._lock:
            return self.sessions.get(game_id)

    def save(self) -> None:
        if not self.persist_path:
            return
        with self._lock:
            doc = {
                gid: {
                    "grid": list(s.state.grid),
                    "move_count": s.state.move_count,
                    "status": s.state.status.value,
                    "assist": s.assist,
                    "seed": s.seed,
                }
                for gid, s in self.sessions.items()
            }
        with open(self.persist_path, "w") as fh:
            json.dump(doc, fh)

    def load(self) -> None:
        if not self.persist_path or not os.path.exists(self.persist_path):
            return
        with open(self.persist_path) as fh:
            doc = json.load(fh)
        for gid, raw in doc.items():
            grid = list(raw["grid"])
            pos = [0] * len(grid)
            for cell, card in enumerate(grid):
                pos[card] = cell
            state = GameState(grid, pos, raw["move_count"], Status(raw["status"]))
            self.sessions[gid] = Session(state, raw["assist"], raw["seed"], threading.Lock())


def state_model(state: GameState) -> StateModel:
    grid = [
        [CardModel(suit=card // 13, rank=card % 13) for card in state.grid[row * COLS : (row + 1) * COLS]]
        for row in range(4)
    ]
    return StateModel(
        grid=grid,
        move_count=state.move_count,
        status=state.status.value,
        legal_move_count=len(legal_moves(state)),
    )


def _error(status_code: int, error: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": error})


def create_app(persist_path: str | None = None, ui_dir: str | None = None) -> FastAPI:
    store = SessionStore(persist_path)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        store.load()
        yield
        store.save()

    app = FastAPI(title="carddiv solitaire service", lifespan=lifespan)
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def malformed_body(_request, _exc):
        return _error(400, "bad_request")

    @app.post("/api/games", response_model=GameCreated, status_code=201)
    def create_game(req: CreateGameRequest):
        seed = req.seed if req.seed is not None else int.from_bytes(os.urandom(8), "big")
        game_id, session = store.create(seed, req.assist)
        return GameCreated(game_id=game_id, state=state_model(session.state))

    @app.get("/api/games/{game_id}")
    def get_game(game_id: str):
        session = store.get(game_id)
        if session is None:
            return _error(404, "unknown_game")
        return {"state": state_model(session.state).model_dump()}

    @app.post("/api/games/{game_id}/moves")
    def post_move(game_id: str, req: MoveRequest):
        session = store.get(game_id)
        if session is None:
            return _error(404, "unknown_game")
        if session.assist == "MANUAL" and req.to is None:
            return _error(400, "bad_request")
        with session.lock:
            state = session.state
            source = req.source.cell()
            move = next((m for m in legal_moves(state) if m.mover_cell == source), None)
            if move is None:
                return _error(422, "illegal_move")
            if session.assist == "MANUAL" and req.to.cell() != move.target_cell:
                return _error(422, "illegal_move")
            session.state = apply_move(state, move)
            return {"state": state_model(session.state).model_dump()}

    # optional same-origin hosting of the built browser client; API routes
    # are registered above so they keep precedence over the mount
    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
