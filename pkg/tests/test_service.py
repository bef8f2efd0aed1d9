"""HTTP session service: lifecycle, selections, concurrency, replay."""

import pytest
from fastapi.testclient import TestClient

from oseplan.fixtures import housing_part, seed_database, seed_tools
from oseplan.io_formats import dumps, serialize_osedb, serialize_part, serialize_tools
from oseplan.pipeline import run_pipeline
from oseplan.service import create_app, replay_events


@pytest.fixture()
def inputs():
    return {
        "part": serialize_part(housing_part()),
        "osedb": serialize_osedb(seed_database()),
        "tools": serialize_tools(seed_tools()),
    }


@pytest.fixture()
def client(tmp_path):
    app = create_app(store_dir=tmp_path / "sessions")
    return TestClient(app)


def create_session(client, inputs, session_id="s1"):
    response = client.post("/sessions", json={"id": session_id, **inputs})
    assert response.status_code == 200, response.text
    return response.json()


def test_create_returns_defaults(client, inputs):
    summary = create_session(client, inputs)
    assert summary["id"] == "s1"
    assert summary["version"] == 0
    assert summary["faces"] == 24
    assert summary["inaccessible"] == ["bore-bottom"]

    cands = client.get("/sessions/s1/faces/side-w/candidates").json()
    selected = [c for c in cands["candidates"] if c["selected"]]
    assert len(selected) == 1
    assert selected[0]["rank"] == 1


def test_export_without_mutations_equals_batch(client, inputs):
    create_session(client, inputs)
    plan = client.get("/sessions/s1/plan").json()
    batch = run_pipeline(housing_part(), seed_database(), seed_tools(),
                         database_ver=plan["document"]["database_version"])
    assert dumps(plan["document"]) == dumps(batch.document)
    assert plan["text"] == batch.text


def test_level2_selection_persists_and_keeps_alternatives(client, inputs):
    create_session(client, inputs)
    cands = client.get("/sessions/s1/faces/side-w/candidates").json()
    total = len(cands["candidates"])
    third = [c for c in cands["candidates"] if c["rank"] == 3][0]
    response = client.put(
        "/sessions/s1/faces/side-w/selection",
        json={"version": 0, "level": 2, "candidate": third["key"]},
    )
    assert response.status_code == 200
    fresh = client.get("/sessions/s1/faces/side-w/candidates").json()
    assert len(fresh["candidates"]) == total
    selected = [c for c in fresh["candidates"] if c["selected"]]
    assert selected[0]["key"] == third["key"]
    assert selected[0]["origin"] == "ExpertChoice"


def test_version_conflict_rejected(client, inputs):
    create_session(client, inputs)
    ok = client.put("/sessions/s1/faces/side-w/selection",
                    json={"version": 0, "level": 1})
    assert ok.status_code == 200
    stale = client.put("/sessions/s1/faces/side-w/selection",
                       json={"version": 0, "level": 1})
    assert stale.status_code == 409


def test_level3_custom_with_warning(client, inputs):
    create_session(client, inputs)
    response = client.put(
        "/sessions/s1/faces/side-w/selection",
        json={"version": 0, "level": 3, "custom": {
            "tool": "EM6", "mfg_type": "EndManufacturing", "mode": "Roughing",
            "tmc": "TMC-ALU-CARB", "conditions": {"feed_rate": 9999.0},
        }},
    )
    assert response.status_code == 200
    body = response.json()
    assert any("feed_rate" in w for w in body["warnings"])
    custom = [c for c in body["candidates"] if c["origin"] == "ExpertCustom"]
    assert len(custom) == 1 and custom[0]["selected"]


def test_rebuild_reflects_selection(client, inputs):
    create_session(client, inputs)
    before = client.get("/sessions/s1/plan").json()["document"]
    seq_before = [s for s in before["sequences"] if "side-w" in s["faces"]][0]
    assert seq_before["cutting_set"] == "EM6"

    cands = client.get("/sessions/s1/faces/side-w/candidates").json()
    em8 = [c for c in cands["candidates"] if c["cutting_set"] == "EM8"
           and c["ose"] == "ose-plan-rough-small"][0]
    client.put("/sessions/s1/faces/side-w/selection",
               json={"version": 0, "level": 2, "candidate": em8["key"]})
    client.post("/sessions/s1/rebuild", json={"version": 1})
    after = client.get("/sessions/s1/plan").json()["document"]
    seq_after = [s for s in after["sequences"] if "side-w" in s["faces"]][0]
    assert seq_after["cutting_set"] == "EM8"


def test_unknown_ids_404(client, inputs):
    create_session(client, inputs)
    assert client.get("/sessions/nope").status_code == 404
    assert client.get("/sessions/s1/faces/ghost/candidates").status_code == 404
    response = client.put("/sessions/s1/faces/side-w/selection",
                          json={"version": 0, "level": 2, "candidate": "none"})
    assert response.status_code == 404


def test_whatif_and_audit_endpoints(client, inputs):
    create_session(client, inputs)
    response = client.post("/sessions/s1/whatif",
                           json={"ose": "ose-plan-rough-small", "vary": ["mode"]})
    covered = {v["value"]: v["covered"] for v in response.json()["variants"]}
    assert covered == {"SemiFinishing": True, "Finishing": False}
    audit = client.get("/db/audit", params={"session": "s1"}).json()
    assert audit["clean"] is True


def test_persistence_across_store_reload(tmp_path, inputs):
    store = tmp_path / "sessions"
    with TestClient(create_app(store_dir=store)) as client:
        create_session(client, inputs)
        cands = client.get("/sessions/s1/faces/side-w/candidates").json()
        third = [c for c in cands["candidates"] if c["rank"] == 3][0]
        client.put("/sessions/s1/faces/side-w/selection",
                   json={"version": 0, "level": 2, "candidate": third["key"]})
        client.post("/sessions/s1/rebuild", json={"version": 1})
        plan_before = client.get("/sessions/s1/plan").json()["document"]

    with TestClient(create_app(store_dir=store)) as fresh:
        summary = fresh.get("/sessions/s1").json()
        assert summary["version"] == 2
        plan_after = fresh.get("/sessions/s1/plan").json()["document"]
        assert dumps(plan_after) == dumps(plan_before)
        cands = fresh.get("/sessions/s1/faces/side-w/candidates").json()
        selected = [c for c in cands["candidates"] if c["selected"]][0]
        assert selected["key"] == third["key"]


def test_event_log_replay_reproduces_plan(client, inputs):
    create_session(client, inputs)
    cands = client.get("/sessions/s1/faces/top-s/candidates").json()
    second = [c for c in cands["candidates"] if c["rank"] == 2][0]
    client.put("/sessions/s1/faces/top-s/selection",
               json={"version": 0, "level": 2, "candidate": second["key"]})
    client.post("/sessions/s1/rebuild", json={"version": 1})
    plan = client.get("/sessions/s1/plan").json()["document"]

    events = [
        {"seq": 1, "type": "selection", "face": "top-s", "level": 2,
         "payload": second["key"]},
        {"seq": 2, "type": "rebuild"},
    ]
    replayed = replay_events(inputs["part"], inputs["osedb"], inputs["tools"], events)
    assert dumps(replayed.result.document) == dumps(plan)


def test_selection_reverts_when_candidate_disappears(client, inputs):
    # Remove the selected tool from the session by selecting then rebuilding a
    # narrowed database is out of scope here; instead verify default restore.
    create_session(client, inputs)
    response = client.put("/sessions/s1/faces/side-w/selection",
                          json={"version": 0, "level": 1})
    body = response.json()
    selected = [c for c in body["candidates"] if c["selected"]][0]
    assert selected["rank"] == 1
    assert selected["origin"] == "Default"
