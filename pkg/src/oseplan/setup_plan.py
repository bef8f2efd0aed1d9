"""Preparation-phase structure: setups from access directions, sequences
from shared candidates, and the ordered plan skeleton.

Setups are built by a greedy cover over admissible directions (compulsory
directions are seeded first); sequences merge adjacent faces of one setup
that share the same selected (OSE, cutting set) pair, so a multi-face pocket
flank becomes a single grouped operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .match_engine import Candidate
from .ose_db import Mode, OSEDatabase
from .part_model import Part
from .transform import FaceAttributes

__all__ = [
    "Setup",
    "Sequence",
    "ProcessPlan",
    "PartitionError",
    "build_setups",
    "group_sequences",
    "plan_skeleton",
]

_MODE_ORDER = {Mode.ROUGHING: 0, Mode.SEMI_FINISHING: 1, Mode.FINISHING: 2}


class PartitionError(RuntimeError):
    """A face landed in zero or two setups: internal consistency failure."""


@dataclass
class Setup:
    id: str
    direction: tuple[float, float, float]
    faces: list[str]


@dataclass
class Sequence:
    id: str
    setup: str
    faces: list[str]
    ose: str
    cutting_set: str
    config: str
    mode: Mode | None
    chosen_tmc: str | None = None
    trace: list = field(default_factory=list)
    origin: str = "Default"
    custom: dict | None = None


@dataclass
class ProcessPlan:
    part: str
    setups: list[Setup]
    sequences: list[Sequence]
    conditions: dict[str, object]  # sequence id -> ResolvedConditions
    unmatched: list[str]
    inaccessible: list[str]
    tensions: list[str] = field(default_factory=list)
    synthesis: object | None = None
    database_version: str | None = None


def _desc_lex(direction: tuple[float, float, float]) -> tuple:
    # Larger components first so +z beats -z on equal coverage.
    return tuple(-c for c in direction)


def _cluster_directions(all_dirs: list[tuple[float, float, float]],
                        tol: float = 1e-6) -> dict[tuple, tuple]:
    """Map each direction to a canonical representative within tol, so that
    directions differing only by fit noise share one setup."""
    representatives: list[tuple[float, float, float]] = []
    mapping: dict[tuple, tuple] = {}
    for d in sorted(set(all_dirs), key=_desc_lex):
        match = None
        for rep in representatives:
            if sum((a - b) ** 2 for a, b in zip(d, rep)) <= tol * tol:
                match = rep
                break
        if match is None:
            representatives.append(d)
            match = d
        mapping[d] = match
    return mapping


def build_setups(attrs_by_face: dict[str, FaceAttributes],
                 face_ids: list[str]) -> tuple[list[Setup], list[str]]:
    """Greedy direction cover over the given faces.

    Faces whose single admissible direction is compulsory seed their setups
    first; then the direction covering the most unassigned faces is taken
    repeatedly, ties broken toward the lexicographically largest direction.
    Faces without any admissible direction are returned as excluded.
    """
    raw_dirs: list[tuple[float, float, float]] = []
    for face_id in face_ids:
        raw_dirs.extend(a.direction for a in attrs_by_face[face_id].access)
    canon = _cluster_directions(raw_dirs)

    directions: dict[str, list[tuple[float, float, float]]] = {}
    excluded: list[str] = []
    for face_id in face_ids:
        attrs = attrs_by_face[face_id]
        dirs = sorted({canon[a.direction] for a in attrs.access}, key=_desc_lex)
        if not dirs:
            excluded.append(face_id)
        else:
            directions[face_id] = dirs

    setups: dict[tuple[float, float, float], list[str]] = {}
    assigned: set[str] = set()

    compulsory = [
        face_id
        for face_id in face_ids
        if face_id in directions and attrs_by_face[face_id].access_compulsory
    ]
    seed_dirs = sorted({directions[f][0] for f in compulsory}, key=_desc_lex)
    for direction in seed_dirs:
        members = [f for f in compulsory if directions[f][0] == direction]
        setups.setdefault(direction, []).extend(members)
        assigned.update(members)

    remaining = [f for f in face_ids if f in directions and f not in assigned]
    while remaining:
        coverage: dict[tuple[float, float, float], list[str]] = {}
        for face_id in remaining:
            for direction in directions[face_id]:
                coverage.setdefault(direction, []).append(face_id)
        best_direction = min(
            coverage, key=lambda d: (-len(coverage[d]), _desc_lex(d))
        )
        members = coverage[best_direction]
        setups.setdefault(best_direction, []).extend(members)
        assigned.update(members)
        remaining = [f for f in remaining if f not in assigned]

    ordered = sorted(setups.items(), key=lambda kv: (-len(kv[1]), _desc_lex(kv[0])))
    result = [
        Setup(id=f"setup-{i + 1}", direction=direction,
              faces=sorted(members, key=face_ids.index))
        for i, (direction, members) in enumerate(ordered)
    ]
    return result, excluded


def _selected_candidate(candidates: list[Candidate]) -> Candidate | None:
    for c in candidates:
        if c.selected:
            return c
    return None


def group_sequences(setup: Setup,
                    candidates_by_face: dict[str, list[Candidate]],
                    part: Part,
                    db: OSEDatabase) -> list[Sequence]:
    """Sequences of one setup: connected components of faces sharing the
    same selected (OSE, cutting set) pair, connectivity taken from the part
    adjacency graph."""
    selected: dict[str, Candidate] = {}
    for face_id in setup.faces:
        candidate = _selected_candidate(candidates_by_face.get(face_id, []))
        if candidate is not None:
            selected[face_id] = candidate

    adjacency: dict[str, set[str]] = {}
    for face in part.faces:
        adjacency[face.id] = {adj.face for adj in face.adjacency}

    by_key: dict[tuple[str, str], list[str]] = {}
    for face_id, candidate in selected.items():
        by_key.setdefault((candidate.ose, candidate.cutting_set), []).append(face_id)

    sequences: list[Sequence] = []
    for (ose_id, tool_id) in sorted(by_key):
        members = set(by_key[(ose_id, tool_id)])
        seen: set[str] = set()
        for start in sorted(members):
            if start in seen:
                continue
            component = [start]
            frontier = [start]
            seen.add(start)
            while frontier:
                current = frontier.pop()
                for neighbor in sorted(adjacency.get(current, ())):
                    if neighbor in members and neighbor not in seen:
                        seen.add(neighbor)
                        component.append(neighbor)
                        frontier.append(neighbor)
            representative = selected[component[0]]
            config = db.configs.get(representative.config)
            mode = config.mode if config is not None else None
            if representative.custom is not None:
                mode = Mode(representative.custom["mode"])
            sequences.append(
                Sequence(
                    id="",
                    setup=setup.id,
                    faces=sorted(component),
                    ose=ose_id,
                    cutting_set=tool_id,
                    config=representative.config,
                    mode=mode,
                    chosen_tmc=representative.chosen_tmc,
                    trace=list(representative.trace),
                    origin=representative.origin.value,
                    custom=representative.custom,
                )
            )
    return sequences


def plan_skeleton(part: Part,
                  setups: list[Setup],
                  sequences: list[Sequence],
                  unmatched: list[str],
                  inaccessible: list[str],
                  attrs_by_face: dict[str, FaceAttributes] | None = None) -> ProcessPlan:
    """Order setups and sequences into the plan skeleton and verify the
    face partition.

    Setups are ordered by descending face count (ties toward the larger
    direction); within a setup sequences run Roughing, SemiFinishing,
    Finishing, then by id. Every part face must appear in exactly one setup
    or one exception list.
    """
    counts: dict[str, int] = {}
    for setup in setups:
        for face_id in setup.faces:
            counts[face_id] = counts.get(face_id, 0) + 1
    for face_id, n in counts.items():
        if n > 1:
            raise PartitionError(f"face {face_id} assigned to {n} setups")
    exceptions = set(unmatched) | set(inaccessible)
    for face in part.faces:
        in_setup = counts.get(face.id, 0) == 1
        in_exception = face.id in exceptions
        if in_setup == in_exception:
            raise PartitionError(
                f"face {face.id} must be in exactly one setup or exception list"
            )

    ordered_setups = sorted(
        setups, key=lambda s: (-len(s.faces), _desc_lex(s.direction))
    )
    sequences_by_original: dict[str, list[Sequence]] = {}
    for seq in sequences:
        sequences_by_original.setdefault(seq.setup, []).append(seq)

    ordered_sequences: list[Sequence] = []
    for position, setup in enumerate(ordered_setups):
        members = sequences_by_original.get(setup.id, [])
        members.sort(key=lambda s: (
            _MODE_ORDER.get(s.mode, 99),
            s.faces[0] if s.faces else "",
            s.ose,
            s.cutting_set,
        ))
        new_id = f"setup-{position + 1}"
        setup.id = new_id
        for index, seq in enumerate(members):
            seq.setup = new_id
            seq.id = f"seq-{position + 1}-{index + 1}"
            ordered_sequences.append(seq)

    tensions: list[str] = []
    if attrs_by_face:
        setup_of_face = {f: s.direction for s in ordered_setups for f in s.faces}
        for face_id, direction in setup_of_face.items():
            primary = attrs_by_face[face_id].primary_direction
            if primary is None:
                continue
            gap = sum((a - b) ** 2 for a, b in zip(primary, direction))
            if gap > 1e-12:
                tensions.append(face_id)

    return ProcessPlan(
        part=part.id,
        setups=ordered_setups,
        sequences=ordered_sequences,
        conditions={},
        unmatched=sorted(unmatched),
        inaccessible=sorted(inaccessible),
        tensions=sorted(tensions),
    )
