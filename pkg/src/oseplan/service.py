"""HTTP session service for the preparation phase.

A session holds the part, database and tool set plus the planner's
selections. Creation runs transformation and matching and proposes rank-1
defaults without freezing them; mutations (selection, rebuild) are appended
to an event log and guarded by an optimistic version echo. Sessions persist
on disk as their inputs plus the event log, and are rebuilt by replay on
load, so a restarted service continues exactly where it stopped.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from . import io_formats
from .automation_report import generate_documentation
from .match_engine import (
    InvalidCustomError,
    NoSuchAlternativeError,
    select_candidate,
)
from .ose_db import audit_database, what_if_expand, validate_db
from .part_model import validate_part
from .pipeline import rebuild_plan, run_pipeline
from .setup_plan import PartitionError

__all__ = ["SessionState", "SessionStore", "create_app", "replay_events"]


@dataclass
class SessionState:
    id: str
    part_doc: dict
    osedb_doc: dict
    tools_doc: list
    version: int = 0
    events: list[dict] = field(default_factory=list)

    # Derived state, rebuilt deterministically from inputs + events.
    part: object = None
    db: object = None
    tools: list = None
    database_version: str = ""
    result: object = None

    @staticmethod
    def create(session_id: str, part_doc: dict, osedb_doc: dict,
               tools_doc: list) -> "SessionState":
        state = SessionState(
            id=session_id, part_doc=part_doc, osedb_doc=osedb_doc, tools_doc=tools_doc
        )
        state._initialize()
        return state

    def _initialize(self) -> None:
        self.part = io_formats.parse_part(self.part_doc)
        part_findings = validate_part(self.part)
        if part_findings:
            raise ValueError(
                "part validation failed: " + "; ".join(str(v) for v in part_findings)
            )
        self.db = io_formats.parse_osedb(self.osedb_doc)
        db_findings = validate_db(self.db)
        if db_findings:
            raise ValueError(
                "database validation failed: " + "; ".join(str(f) for f in db_findings)
            )
        self.tools = io_formats.parse_tools(self.tools_doc)
        self.database_version = io_formats.database_version(self.osedb_doc)
        self.result = run_pipeline(
            self.part, self.db, self.tools, database_ver=self.database_version
        )

    # -- mutations ---------------------------------------------------------

    def apply_selection(self, face_id: str, level: int, payload: object,
                        record: bool = True) -> list[str]:
        candidates = self.result.candidates.get(face_id)
        if candidates is None:
            raise KeyError(f"unknown face {face_id!r}")
        updated = select_candidate(
            candidates, level, payload, db=self.db, tools=self.tools
        )
        self.result.candidates[face_id] = updated
        warnings = [w for c in updated if c.selected for w in c.warnings]
        if record:
            self.events.append(
                {"seq": len(self.events) + 1, "type": "selection",
                 "face": face_id, "level": level, "payload": payload}
            )
            self.version += 1
        return warnings

    def rebuild(self, record: bool = True) -> None:
        plan, demoted = rebuild_plan(
            self.part, self.result.transform, self.result.candidates,
            self.db, self.tools, self.database_version,
        )
        plan.synthesis = self.result.synthesis
        document, text = generate_documentation(plan, self.db, self.tools)
        self.result.plan = plan
        self.result.document = document
        self.result.text = text
        self.result.demoted = demoted
        if record:
            self.events.append({"seq": len(self.events) + 1, "type": "rebuild"})
            self.version += 1

    def replay(self, events: list[dict]) -> None:
        for event in events:
            if event["type"] == "selection":
                self.apply_selection(
                    event["face"], event["level"], event.get("payload"), record=False
                )
            elif event["type"] == "rebuild":
                self.rebuild(record=False)
        self.events = list(events)
        self.version = len(events)

    # -- projections -------------------------------------------------------

    def summary(self) -> dict:
        return {
            "id": self.id,
            "version": self.version,
            "part": self.part.id,
            "database_version": self.database_version,
            "synthesis": self.result.synthesis.to_json(),
            "faces": len(self.part.faces),
            "unmatched": self.result.plan.unmatched,
            "inaccessible": self.result.plan.inaccessible,
            "events": len(self.events),
        }

    def faces_payload(self) -> dict:
        attrs_doc = io_formats.serialize_attributes(
            self.result.transform, self.result.synthesis
        )
        return {"id": self.id, "version": self.version, "faces": attrs_doc["faces"]}

    def candidates_payload(self, face_id: str) -> dict:
        candidates = self.result.candidates.get(face_id)
        if candidates is None:
            raise KeyError(face_id)
        doc = io_formats.serialize_candidates({face_id: candidates})
        return {
            "id": self.id,
            "version": self.version,
            "face": face_id,
            "candidates": doc["faces"][face_id],
        }


def replay_events(part_doc: dict, osedb_doc: dict, tools_doc: list,
                  events: list[dict]) -> SessionState:
    """Rebuild a session from its inputs and event log."""
    state = SessionState.create("replay", part_doc, osedb_doc, tools_doc)
    state.replay(events)
    return state


class SessionStore:
    """Directory-backed session persistence: inputs + event log per session."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, SessionState] = {}

    def _path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.json"

    def save(self, state: SessionState) -> None:
        payload = {
            "id": state.id,
            "part": state.part_doc,
            "osedb": state.osedb_doc,
            "tools": state.tools_doc,
            "events": state.events,
        }
        self._path(state.id).write_text(io_formats.dumps(payload) + "\n", encoding="utf-8")
        self._cache[state.id] = state

    def load(self, session_id: str) -> SessionState:
        if session_id in self._cache:
            return self._cache[session_id]
        path = self._path(session_id)
        if not path.exists():
            raise KeyError(session_id)
        payload = json.loads(path.read_text(encoding="utf-8"))
        state = SessionState.create(
            payload["id"], payload["part"], payload["osedb"], payload["tools"]
        )
        state.replay(payload.get("events", []))
        self._cache[session_id] = state
        return state

    def ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))


def create_app(store_dir: str | Path = "sessions") -> FastAPI:
    app = FastAPI(title="oseplan session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(store_dir)

    def get_session(session_id: str) -> SessionState:
        try:
            return store.load(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    def check_version(state: SessionState, payload: dict) -> None:
        sent = payload.get("version")
        if sent is None:
            raise HTTPException(status_code=400, detail="mutation needs a version echo")
        if sent != state.version:
            raise HTTPException(
                status_code=409,
                detail=f"version conflict: session at {state.version}, request at {sent}",
            )

    @app.post("/sessions")
    def create_session(payload: dict = Body(...)):
        for key in ("part", "osedb", "tools"):
            if key not in payload:
                raise HTTPException(status_code=400, detail=f"missing {key!r} document")
        session_id = payload.get("id") or uuid.uuid4().hex[:12]
        if session_id in store.ids():
            raise HTTPException(status_code=409, detail=f"session {session_id!r} exists")
        try:
            state = SessionState.create(
                session_id, payload["part"], payload["osedb"], payload["tools"]
            )
        except (io_formats.SchemaError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        store.save(state)
        return state.summary()

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": store.ids()}

    @app.get("/sessions/{session_id}")
    def session_summary(session_id: str):
        return get_session(session_id).summary()

    @app.get("/sessions/{session_id}/faces")
    def session_faces(session_id: str):
        return get_session(session_id).faces_payload()

    @app.get("/sessions/{session_id}/faces/{face_id}/candidates")
    def face_candidates(session_id: str, face_id: str):
        state = get_session(session_id)
        try:
            return state.candidates_payload(face_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no candidates for {face_id!r}")

    @app.put("/sessions/{session_id}/faces/{face_id}/selection")
    def put_selection(session_id: str, face_id: str, payload: dict = Body(...)):
        state = get_session(session_id)
        check_version(state, payload)
        level = payload.get("level")
        if level not in (1, 2, 3):
            raise HTTPException(status_code=400, detail="level must be 1, 2 or 3")
        selector = payload.get("candidate") if level == 2 else payload.get("custom")
        try:
            warnings = state.apply_selection(face_id, level, selector)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except NoSuchAlternativeError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except InvalidCustomError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        store.save(state)
        response = state.candidates_payload(face_id)
        response["warnings"] = warnings
        return response

    @app.post("/sessions/{session_id}/rebuild")
    def rebuild_session(session_id: str, payload: dict = Body(...)):
        state = get_session(session_id)
        check_version(state, payload)
        try:
            state.rebuild()
        except PartitionError as exc:
            raise HTTPException(status_code=500, detail=str(exc))
        store.save(state)
        return state.summary()

    @app.get("/sessions/{session_id}/plan")
    def session_plan(session_id: str):
        state = get_session(session_id)
        return {
            "id": state.id,
            "version": state.version,
            "document": state.result.document,
            "text": state.result.text,
        }

    @app.post("/sessions/{session_id}/whatif")
    def session_whatif(session_id: str, payload: dict = Body(...)):
        state = get_session(session_id)
        ose_id = payload.get("ose")
        if ose_id not in state.db.oses:
            raise HTTPException(status_code=404, detail=f"unknown OSE {ose_id!r}")
        vary = tuple(payload.get("vary", ["mfg_type", "mode", "tmc"]))
        variants = what_if_expand(state.db.oses[ose_id], state.db, vary)
        return {
            "id": state.id,
            "version": state.version,
            "ose": ose_id,
            "variants": [
                {
                    "field": v.field,
                    "value": v.value,
                    "descriptor": {k: val for k, val in v.descriptor},
                    "covered": v.covered,
                }
                for v in variants
            ],
        }

    @app.get("/db/audit")
    def db_audit(session: str):
        state = get_session(session)
        report = audit_database(state.db)
        return {
            "session": state.id,
            "shadowing": [
                {"oses": list(f.subject), "detail": f.detail} for f in report.shadowing
            ],
            "unsatisfiable": [
                {"oses": list(f.subject), "detail": f.detail}
                for f in report.unsatisfiable
            ],
            "duplicates": [
                {"oses": list(f.subject), "detail": f.detail} for f in report.duplicates
            ],
            "clean": report.is_clean(),
        }

    return app
