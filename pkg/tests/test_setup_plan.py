"""Setup covering with exact oracle, sequence grouping, plan ordering."""

import itertools

import pytest

from oseplan.fixtures import (
    pocket_depth_part,
    seed_database,
    seed_tools,
    six_type_part,
    web_part,
)
from oseplan.match_engine import Candidate, CandidateOrigin, TraceEntry
from oseplan.part_model import Adjacency, Box3, Part, Point3, SampledFace
from oseplan.pipeline import run_pipeline
from oseplan.setup_plan import (
    PartitionError,
    Sequence,
    Setup,
    build_setups,
    group_sequences,
    plan_skeleton,
)
from oseplan.transform import (
    AccessDirection,
    AccessKind,
    FaceAttributes,
    GeometryType,
    MfgType,
    Openness,
    UNBOUNDED,
    transform_part,
)


def attrs_with_dirs(face_id, directions, compulsory=None):
    access = [
        AccessDirection(tuple(float(c) for c in d), AccessKind.SINGLE,
                        compulsory if compulsory is not None else len(directions) == 1)
        for d in directions
    ]
    return FaceAttributes(
        face=face_id, geometry_type=GeometryType.PLAN, fit_residual=0.0,
        openness=Openness.OPEN, edge_openness=[], access=access,
        end_accessibility=1.0, flank_accessibility=1.0, global_accessibility=0.0,
        min_fillet_radius=UNBOUNDED,
        dimension_box=Box3(Point3(0, 0, 0), Point3(1, 1, 1)),
        potential_mfg_types=[MfgType.END],
    )


def exact_min_cover(attrs_by_face, face_ids):
    """Exhaustive-search oracle for the minimum number of directions
    covering all faces."""
    directions = sorted({
        a.direction for f in face_ids for a in attrs_by_face[f].access
    })
    for size in range(1, len(directions) + 1):
        for combo in itertools.combinations(directions, size):
            chosen = set(combo)
            if all(
                any(a.direction in chosen for a in attrs_by_face[f].access)
                for f in face_ids
            ):
                return size
    raise AssertionError("no cover exists")


def test_three_faces_one_direction():
    attrs = {f: attrs_with_dirs(f, [(0, 0, 1)]) for f in ("a", "b", "c")}
    setups, excluded = build_setups(attrs, ["a", "b", "c"])
    assert excluded == []
    assert len(setups) == 1
    assert setups[0].direction == (0.0, 0.0, 1.0)
    assert sorted(setups[0].faces) == ["a", "b", "c"]


def test_flexible_face_joins_plus_z_on_tie():
    attrs = {
        "up": attrs_with_dirs("up", [(0, 0, 1)]),
        "down": attrs_with_dirs("down", [(0, 0, -1)]),
        "both": attrs_with_dirs("both", [(0, 0, 1), (0, 0, -1)], compulsory=False),
    }
    setups, _ = build_setups(attrs, ["up", "down", "both"])
    assert len(setups) == 2
    assert exact_min_cover(attrs, ["up", "down", "both"]) == 2
    by_dir = {s.direction: s.faces for s in setups}
    assert "both" in by_dir[(0.0, 0.0, 1.0)]


def test_greedy_matches_exact_cover_on_mixed_fixture():
    attrs = {}
    spec = {
        "f1": [(0, 0, 1)], "f2": [(0, 0, 1)], "f3": [(1, 0, 0)],
        "f4": [(1, 0, 0), (0, 0, 1)], "f5": [(0, 1, 0)],
        "f6": [(0, 1, 0), (1, 0, 0)], "f7": [(0, 0, 1), (0, 1, 0)],
        "f8": [(0, 0, -1)], "f9": [(0, 0, -1), (0, 1, 0)],
        "f10": [(0, 1, 0)],
    }
    for fid, dirs in spec.items():
        attrs[fid] = attrs_with_dirs(fid, dirs, compulsory=len(dirs) == 1)
    face_ids = list(spec)
    setups, excluded = build_setups(attrs, face_ids)
    assert excluded == []
    assert len(setups) == exact_min_cover(attrs, face_ids)
    covered = sorted(f for s in setups for f in s.faces)
    assert covered == sorted(face_ids)


def test_setup_directions_admissible_for_members():
    for part in (web_part(), pocket_depth_part(), six_type_part()):
        result = transform_part(part)
        attrs = result.by_face()
        face_ids = [f for f in part.face_ids() if f not in result.inaccessible]
        setups, _ = build_setups(attrs, face_ids)
        for setup in setups:
            for face_id in setup.faces:
                dirs = [a.direction for a in attrs[face_id].access]
                assert any(
                    sum((x - y) ** 2 for x, y in zip(d, setup.direction)) <= 1e-12
                    for d in dirs
                )


# ---------------------------------------------------------------------------
# sequences


def candidate(face, ose="OSE-7", tool="T-3", selected=True):
    return Candidate(
        face=face, ose=ose, cutting_set=tool, config="cfg-flank-rough",
        rank=1, trace=[TraceEntry("c", "pass")], selected=selected,
        origin=CandidateOrigin.DEFAULT, chosen_tmc="TMC-ALU-CARB",
    )


def ring_part(face_ids):
    """Faces adjacent in a ring (grids are placeholders)."""
    faces = []
    n = len(face_ids)
    import numpy as np

    for i, fid in enumerate(face_ids):
        grid = np.zeros((2, 2, 3))
        grid[:, :, 0] = [[0, 1], [0, 1]]
        grid[:, :, 1] = [[0, 0], [1, 1]]
        adj = [Adjacency(face_ids[(i - 1) % n], 270.0),
               Adjacency(face_ids[(i + 1) % n], 270.0)]
        faces.append(SampledFace(fid, grid + i, adjacency=adj))
    return Part("ring", faces)


def test_pocket_flank_four_faces_one_sequence():
    db = seed_database()
    face_ids = ["w1", "w2", "w3", "w4"]
    part = ring_part(face_ids)
    setup = Setup(id="setup-1", direction=(0.0, 0.0, 1.0), faces=face_ids)
    candidates = {f: [candidate(f)] for f in face_ids}
    sequences = group_sequences(setup, candidates, part, db)
    assert len(sequences) == 1
    assert sorted(sequences[0].faces) == sorted(face_ids)
    assert sequences[0].ose == "OSE-7"
    assert sequences[0].cutting_set == "T-3"


def test_disjoint_candidates_two_singletons():
    db = seed_database()
    part = ring_part(["a", "b"])
    setup = Setup(id="setup-1", direction=(0.0, 0.0, 1.0), faces=["a", "b"])
    candidates = {
        "a": [candidate("a", ose="ose-x", tool="T-1")],
        "b": [candidate("b", ose="ose-y", tool="T-2")],
    }
    sequences = group_sequences(setup, candidates, part, db)
    assert len(sequences) == 2
    assert all(len(s.faces) == 1 for s in sequences)


def test_shared_candidate_without_adjacency_stays_split():
    db = seed_database()
    import numpy as np

    faces = []
    for fid in ("far-1", "far-2"):
        grid = np.zeros((2, 2, 3))
        grid[:, :, 0] = [[0, 1], [0, 1]]
        faces.append(SampledFace(fid, grid))
    part = Part("p", faces)
    setup = Setup(id="setup-1", direction=(0.0, 0.0, 1.0), faces=["far-1", "far-2"])
    candidates = {f: [candidate(f)] for f in ("far-1", "far-2")}
    sequences = group_sequences(setup, candidates, part, db)

    # Connected-components oracle: no adjacency edges, so two components.
    assert len(sequences) == 2


def test_sequence_members_hold_shared_candidate(housing, db, tools):
    result = run_pipeline(housing, db, tools)
    for seq in result.plan.sequences:
        for face_id in seq.faces:
            keys = {(c.ose, c.cutting_set) for c in result.candidates[face_id]}
            assert (seq.ose, seq.cutting_set) in keys


# ---------------------------------------------------------------------------
# plan skeleton


def test_roughing_before_finishing_within_setup(housing, db, tools):
    result = run_pipeline(housing, db, tools)
    order = {None: 99, "Roughing": 0, "SemiFinishing": 1, "Finishing": 2}
    for setup in result.plan.setups:
        modes = [order[s.mode.value if s.mode else None]
                 for s in result.plan.sequences if s.setup == setup.id]
        assert modes == sorted(modes)


def test_setups_ordered_by_face_count(housing, db, tools):
    result = run_pipeline(housing, db, tools)
    counts = [len(s.faces) for s in result.plan.setups]
    assert counts == sorted(counts, reverse=True)


def test_every_face_in_exactly_one_setup_or_exception(housing, db, tools):
    result = run_pipeline(housing, db, tools)
    plan = result.plan
    seen = {}
    for setup in plan.setups:
        for f in setup.faces:
            seen[f] = seen.get(f, 0) + 1
    for f in plan.unmatched + plan.inaccessible:
        seen[f] = seen.get(f, 0) + 1
    assert seen == {f.id: 1 for f in housing.faces}


def test_partition_violation_raises():
    import numpy as np

    grid = np.zeros((2, 2, 3))
    grid[:, :, 0] = [[0, 1], [0, 1]]
    part = Part("p", [SampledFace("only", grid)])
    twice = [Setup("setup-1", (0.0, 0.0, 1.0), ["only"]),
             Setup("setup-2", (0.0, 0.0, -1.0), ["only"])]
    with pytest.raises(PartitionError):
        plan_skeleton(part, twice, [], [], [])
    with pytest.raises(PartitionError):
        plan_skeleton(part, [], [], [], [])  # face nowhere
