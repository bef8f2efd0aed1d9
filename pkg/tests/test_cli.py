"""CLI verbs, exit codes, byte determinism."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "oseplan.cli", *args],
        capture_output=True, text=True,
    )


@pytest.fixture(scope="module")
def paths():
    assert FIXTURES.exists(), "run python -m oseplan.fixtures fixtures first"
    return {
        "part": str(FIXTURES / "housing_24.json"),
        "osedb": str(FIXTURES / "osedb_seed.json"),
        "tools": str(FIXTURES / "tools_seed.json"),
        "defects": str(FIXTURES / "osedb_audit_defects.json"),
    }


def test_transform_verb(paths, tmp_path):
    out = tmp_path / "attrs.json"
    proc = run_cli("transform", "--part", paths["part"], "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    data = json.loads(out.read_text())
    assert len(data["faces"]) == 24
    assert data["synthesis"]["total"] == 24


def test_match_verb(paths, tmp_path):
    out = tmp_path / "cands.json"
    proc = run_cli("match", "--part", paths["part"], "--osedb", paths["osedb"],
                   "--tools", paths["tools"], "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    data = json.loads(out.read_text())
    assert "wall-w" in data["faces"]
    assert data["unmatched"] == []


def test_plan_verb_and_determinism(paths, tmp_path):
    out1, out2 = tmp_path / "p1.json", tmp_path / "p2.json"
    t1, t2 = tmp_path / "p1.txt", tmp_path / "p2.txt"
    p1 = run_cli("plan", "--part", paths["part"], "--osedb", paths["osedb"],
                 "--tools", paths["tools"], "--out", str(out1), "--text", str(t1))
    p2 = run_cli("plan", "--part", paths["part"], "--osedb", paths["osedb"],
                 "--tools", paths["tools"], "--out", str(out2), "--text", str(t2))
    assert p1.returncode == 0 and p2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert t1.read_bytes() == t2.read_bytes()


def test_audit_verb(paths):
    proc = run_cli("audit", "--osedb", paths["defects"])
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert len(data["shadowing"]) == 1
    assert len(data["unsatisfiable"]) == 1
    assert len(data["duplicates"]) == 1
    clean = run_cli("audit", "--osedb", paths["osedb"])
    assert json.loads(clean.stdout)["clean"] is True


def test_whatif_verb(paths):
    proc = run_cli("whatif", "--osedb", paths["osedb"],
                   "--ose", "ose-plan-rough-small", "--vary", "mode")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    covered = {v["value"]: v["covered"] for v in data["variants"]}
    assert covered == {"SemiFinishing": True, "Finishing": False}


def test_report_verb_counts():
    proc = run_cli("report", "--counts",
                   '{"Plan": 50, "Cylinder": 109, "ConeShaped": 15, '
                   '"Ruled": 13, "ConstRadiusSweep": 9, "Unspecified": 144}')
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert [r["percentage"] for r in data["rows"]] == [
        14.71, 32.06, 4.41, 3.82, 2.65, 42.35
    ]


def test_missing_file_exit_1(paths):
    proc = run_cli("transform", "--part", "no-such-file.json")
    assert proc.returncode == 1
    assert "cannot read" in proc.stderr


def test_malformed_json_exit_1(paths, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"id": "x", "faces": [', encoding="utf-8")
    proc = run_cli("transform", "--part", str(bad))
    assert proc.returncode == 1
    assert "line" in proc.stderr


def test_schema_violation_exit_1(paths, tmp_path):
    doc = json.loads(Path(paths["tools"]).read_text())
    doc[0]["diameter"] = -2
    bad = tmp_path / "tools.json"
    bad.write_text(json.dumps(doc), encoding="utf-8")
    proc = run_cli("match", "--part", paths["part"], "--osedb", paths["osedb"],
                   "--tools", str(bad))
    assert proc.returncode == 1
    assert "diameter" in proc.stderr


def test_validation_findings_exit_2(paths, tmp_path):
    doc = json.loads(Path(paths["osedb"]).read_text())
    doc["oses"][0]["family"] = "fam-missing"
    bad = tmp_path / "db.json"
    bad.write_text(json.dumps(doc), encoding="utf-8")
    proc = run_cli("audit", "--osedb", str(bad))
    assert proc.returncode == 2
    assert "dangling" in proc.stderr


def test_shipped_fixtures_match_generators(tmp_path):
    from oseplan.fixtures import write_all

    regenerated = write_all(str(tmp_path))
    for path in regenerated:
        name = Path(path).name
        shipped = FIXTURES / name
        assert shipped.read_bytes() == Path(path).read_bytes(), name
