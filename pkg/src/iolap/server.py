"""HTTP service: sessions that accumulate a dashboard of enhanced cubes,
plus runtime catalog registration. Thin layer over intents.execute."""
from __future__ import annotations

import json
import threading

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from . import iql
from .errors import EngineError, PlanError
from .intents import Context, execute
from .mdcore import load_cube, load_dimension


class Session:
    def __init__(self, sid, catalog, seed):
        self.id = sid
        self.ctx = Context(catalog, seed=seed)
        self.dashboard = []  # serialized documents, in execution order
        self.lock = threading.Lock()

    def submit(self, text):
        with self.lock:
            statement = iql.parse_statement(text)
            result = execute(statement, self.ctx)
            doc = json.dumps(result.to_json(), sort_keys=True)
            self.dashboard.append(doc)
            return doc


def _json(payload, status=200):
    return Response(content=payload if isinstance(payload, str)
                    else json.dumps(payload, sort_keys=True),
                    status_code=status, media_type="application/json")


def create_app(catalog, seed=42):
    app = FastAPI(title="intentional analytics engine")
    sessions = {}
    state_lock = threading.Lock()
    counter = {"next": 1}

    @app.exception_handler(EngineError)
    async def engine_error(request: Request, exc: EngineError):
        return JSONResponse(status_code=400, content=exc.to_json())

    def get_session(sid):
        session = sessions.get(sid)
        if session is None:
            raise PlanError(f"unknown session {sid}")
        return session

    @app.post("/sessions")
    def create_session():
        with state_lock:
            sid = counter["next"]
            counter["next"] += 1
            sessions[sid] = Session(sid, catalog, seed)
        return {"id": sid}

    @app.post("/sessions/{sid}/intentions")
    async def submit(sid: int, request: Request):
        body = await request.json()
        text = body.get("text")
        if not isinstance(text, str):
            raise PlanError("request body must be {\"text\": \"...\"}")
        return _json(get_session(sid).submit(text))

    @app.get("/sessions/{sid}/dashboard")
    def dashboard(sid: int):
        docs = get_session(sid).dashboard
        return _json("[" + ",".join(docs) + "]")

    @app.post("/catalog/{kind}")
    async def register(kind: str, request: Request):
        doc = await request.json()
        with state_lock:
            if kind == "dimension":
                catalog.register_dimension(
                    load_dimension(doc["definition"], doc["rows"]))
                name = doc["definition"]["name"]
            elif kind == "cube":
                catalog.register_cube(
                    load_cube(doc["definition"], doc["rows"],
                              catalog.dimensions))
                name = doc["definition"]["name"]
            elif kind == "benchmark-query":
                iql.parse_cube_query(doc["text"])  # reject malformed texts
                catalog.register_query(doc["name"], doc["text"])
                name = doc["name"]
            elif kind == "kpi-rules":
                catalog.register_kpi(doc["name"], doc)
                name = doc["name"]
            else:
                raise PlanError(f"unknown catalog kind {kind!r} (expected "
                                "dimension, cube, benchmark-query or kpi-rules)")
        return {"registered": kind, "name": name}

    @app.get("/catalog")
    def catalog_listing():
        return _json(catalog.to_json())

    return app
