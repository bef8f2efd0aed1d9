"""End-to-end pipeline: transform, match, setup planning, condition
resolution and documentation, deterministic across runs.

Candidates whose resolved conditions turn out infeasible are demoted: every
face holding the failing candidate moves to its next-ranked alternative and
the preparation stage is rebuilt, until all sequences resolve or a face runs
out of alternatives (which parks it in the unmatched exception list).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automation_report import (
    InfeasibleConditionsError,
    ResolvedConditions,
    SynthesisTable,
    generate_documentation,
    optimize_conditions,
    report_statistics,
)
from .match_engine import Candidate, CandidateOrigin, match_face, select_candidate
from .ose_db import CuttingSet, OSEDatabase, Priority
from .part_model import Part
from .setup_plan import ProcessPlan, build_setups, group_sequences, plan_skeleton
from .transform import Tolerances, TransformResult, transform_part

__all__ = ["PipelineResult", "run_pipeline", "rebuild_plan"]


@dataclass
class PipelineResult:
    part: Part
    transform: TransformResult
    candidates: dict[str, list[Candidate]]
    plan: ProcessPlan
    document: dict
    text: str
    synthesis: SynthesisTable
    demoted: list[str] = field(default_factory=list)


def _resolve_sequence(seq, db: OSEDatabase, tools_by_id: dict[str, CuttingSet]
                      ) -> ResolvedConditions:
    tool = tools_by_id[seq.cutting_set]
    tmc = db.tmcs.get(seq.chosen_tmc) if seq.chosen_tmc else None
    if seq.custom is not None:
        return optimize_conditions(
            Priority.DEFAULT, tool, tmc,
            custom_values=seq.custom.get("conditions", {}),
            custom_warnings=seq.custom.get("warnings", []),
        )
    config = db.configs[seq.config]
    return optimize_conditions(config.priority, tool, tmc)


def rebuild_plan(part: Part,
                 transform_result: TransformResult,
                 candidates: dict[str, list[Candidate]],
                 db: OSEDatabase,
                 tools: list[CuttingSet],
                 database_ver: str | None = None) -> tuple[ProcessPlan, list[str]]:
    """Build setups, sequences and resolved conditions from the current
    selections, demoting infeasible candidates until the plan resolves."""
    tools_by_id = {t.id: t for t in tools}
    attrs_by_face = transform_result.by_face()
    demoted: list[str] = []
    demoted_keys: dict[str, set[str]] = {f: set() for f in candidates}

    for _ in range(1 + sum(len(c) for c in candidates.values())):
        matched_faces = [
            f.id for f in part.faces
            if any(c.selected for c in candidates.get(f.id, []))
        ]
        unmatched = [
            f.id for f in part.faces
            if f.id not in transform_result.inaccessible
            and not any(c.selected for c in candidates.get(f.id, []))
        ]
        setups, excluded = build_setups(attrs_by_face, matched_faces)
        sequences = []
        for setup in setups:
            sequences.extend(group_sequences(setup, candidates, part, db))
        plan = plan_skeleton(
            part, setups, sequences,
            unmatched=sorted(set(unmatched) | set(excluded)),
            inaccessible=list(transform_result.inaccessible),
            attrs_by_face=attrs_by_face,
        )
        plan.database_version = database_ver

        failing_key: str | None = None
        failing_faces: list[str] = []
        conditions: dict[str, ResolvedConditions] = {}
        for seq in plan.sequences:
            try:
                conditions[seq.id] = _resolve_sequence(seq, db, tools_by_id)
            except InfeasibleConditionsError:
                failing_key = f"{seq.ose}:{seq.cutting_set}"
                failing_faces = list(seq.faces)
                break
        if failing_key is None:
            plan.conditions = conditions
            return plan, demoted

        demoted.append(failing_key)
        for face_id in failing_faces:
            demoted_keys[face_id].add(failing_key)
            remaining = [
                c for c in candidates[face_id]
                if c.key not in demoted_keys[face_id]
                and c.origin is not CandidateOrigin.EXPERT_CUSTOM
            ]
            for c in candidates[face_id]:
                c.selected = False
            if remaining:
                chosen = min(remaining, key=lambda c: c.rank)
                for c in candidates[face_id]:
                    if c.key == chosen.key:
                        c.selected = True
    raise RuntimeError("plan resolution did not terminate")


def run_pipeline(part: Part, db: OSEDatabase, tools: list[CuttingSet],
                 tolerances: Tolerances | None = None,
                 database_ver: str | None = None) -> PipelineResult:
    """The three phases composed: analyze faces, match candidates with
    default selections, build and resolve the plan, emit documentation."""
    transform_result = transform_part(part, tolerances)
    synthesis = report_statistics(transform_result.counts)

    candidates: dict[str, list[Candidate]] = {}
    for attrs in transform_result.attributes:
        if attrs.inaccessible:
            continue
        face_candidates = match_face(attrs, db, tools)
        if face_candidates:
            face_candidates = select_candidate(face_candidates, level=1)
        candidates[attrs.face] = face_candidates

    plan, demoted = rebuild_plan(
        part, transform_result, candidates, db, tools, database_ver
    )
    plan.synthesis = synthesis
    document, text = generate_documentation(plan, db, tools)
    return PipelineResult(
        part=part,
        transform=transform_result,
        candidates=candidates,
        plan=plan,
        document=document,
        text=text,
        synthesis=synthesis,
        demoted=demoted,
    )
