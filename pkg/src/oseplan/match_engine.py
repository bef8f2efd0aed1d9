"""Check evaluation and candidate matching.

The engine plays the computer's bottom-up role: it only compares parameters.
For each face it evaluates every OSE whose geometry family accepts the face,
binds tools through cutting-set-type membership, and keeps the (OSE, tool)
pairs passing both the geometric and the manufacturing compliance checks as
ranked candidates, each carrying its full check trace as justification.
Alternatives are never discarded by a selection.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .ose_db import (
    CONDITION_PARAMS,
    Check,
    CuttingSet,
    ExtendedCuttingConditions,
    GeometryFamily,
    Interval,
    OSE,
    OSEDatabase,
    Priority,
    classify_tool,
)
from .transform import FaceAttributes, MfgType

__all__ = [
    "BindingError",
    "NoSuchAlternativeError",
    "InvalidCustomError",
    "Bindings",
    "TraceEntry",
    "Candidate",
    "CandidateOrigin",
    "eval_check",
    "face_in_family",
    "geometric_compliance",
    "manufacturing_compliance",
    "match_face",
    "select_candidate",
]


class BindingError(KeyError):
    """An attribute reference cannot be resolved: malformed database, not a
    failed check."""


class NoSuchAlternativeError(KeyError):
    pass


class InvalidCustomError(ValueError):
    pass


class CandidateOrigin(str, Enum):
    DEFAULT = "Default"
    EXPERT_CHOICE = "ExpertChoice"
    EXPERT_CUSTOM = "ExpertCustom"


@dataclass
class Bindings:
    face: FaceAttributes
    tool: CuttingSet | None = None
    config: ExtendedCuttingConditions | None = None

    def resolve(self, ref) -> object:
        namespace, name = ref.namespace, ref.name
        if namespace == "face":
            return _face_attr(self.face, name)
        if namespace == "tool":
            if self.tool is None:
                raise BindingError(f"no tool bound for {ref}")
            return _tool_attr(self.tool, name)
        if namespace == "config":
            if self.config is None:
                raise BindingError(f"no config bound for {ref}")
            return _config_attr(self.config, name)
        raise BindingError(f"unknown namespace {namespace!r}")


def _face_attr(attrs: FaceAttributes, name: str) -> object:
    if name == "geometry_type":
        return attrs.geometry_type.value
    if name == "openness":
        return attrs.openness.value
    if name == "access_kinds":
        return list(attrs.access_kinds)
    if name == "access_compulsory":
        return attrs.access_compulsory
    if name == "potential_mfg_types":
        return [m.value for m in attrs.potential_mfg_types]
    if name in ("end_accessibility", "flank_accessibility", "global_accessibility",
                "min_fillet_radius", "fit_residual"):
        return getattr(attrs, name)
    raise BindingError(f"unknown face attribute {name!r}")


def _tool_attr(tool: CuttingSet, name: str) -> object:
    if name in ("diameter", "cutting_length", "tool_length", "end_radius"):
        return getattr(tool, name)
    if name == "cutting_material":
        return tool.cutting_material
    if name == "mfg_types":
        return [m.value for m in tool.mfg_types]
    if name == "modes":
        return [m.value for m in tool.modes]
    if name == "tmcs":
        return list(tool.tmcs)
    for param in CONDITION_PARAMS:
        if name == f"{param}_min":
            return tool.conditions[param].lo if param in tool.conditions else 0.0
        if name == f"{param}_max":
            return tool.conditions[param].hi if param in tool.conditions else 0.0
    raise BindingError(f"unknown tool attribute {name!r}")


def _config_attr(config: ExtendedCuttingConditions, name: str) -> object:
    if name == "mfg_type":
        return config.mfg_type.value
    if name == "mode":
        return config.mode.value
    if name == "trajectory_strategy":
        return config.trajectory_strategy.value if config.trajectory_strategy else None
    if name == "allowed_tmcs":
        return list(config.allowed_tmcs)
    if name == "priority":
        return config.priority.value
    raise BindingError(f"unknown config attribute {name!r}")


def eval_check(check: Check, bindings: Bindings) -> bool:
    """Evaluate one elementary check; True is pass, False is fail.

    Scalar operators compare numbers; contains_any passes when the lhs list
    intersects the value set, contains_all when it includes it entirely;
    equality on a list attribute means containment of the rhs.
    """
    lhs = bindings.resolve(check.lhs)
    if check.op in ("lt", "le", "gt", "ge"):
        rhs = bindings.resolve(check.ref) if check.ref is not None else check.value
        if not isinstance(lhs, (int, float)) or not isinstance(rhs, (int, float)):
            raise BindingError(f"scalar comparison on non-numeric values in {check}")
        if check.op == "lt":
            return lhs < rhs
        if check.op == "le":
            return lhs <= rhs
        if check.op == "gt":
            return lhs > rhs
        return lhs >= rhs
    if check.op == "eq":
        if isinstance(lhs, list):
            if check.values is not None:
                return set(map(str, check.values)) <= set(map(str, lhs))
            return str(check.value) in set(map(str, lhs))
        rhs = bindings.resolve(check.ref) if check.ref is not None else check.value
        return lhs == rhs
    if check.op in ("contains_any", "contains_all"):
        if not isinstance(lhs, list):
            raise BindingError(f"contains operator on non-list attribute in {check}")
        members = set(map(str, lhs))
        targets = set(map(str, check.values or ()))
        if check.op == "contains_any":
            return bool(members & targets)
        return targets <= members
    raise BindingError(f"unknown operator {check.op!r}")


@dataclass(frozen=True)
class TraceEntry:
    check: str
    outcome: str  # "pass" or "fail"


@dataclass
class Candidate:
    face: str
    ose: str
    cutting_set: str
    config: str
    rank: int
    trace: list[TraceEntry]
    selected: bool = False
    origin: CandidateOrigin = CandidateOrigin.DEFAULT
    chosen_tmc: str | None = None
    feed_rate_bound: float = 0.0
    warnings: list[str] = field(default_factory=list)
    custom: dict | None = None

    @property
    def key(self) -> str:
        """Stable identity of an alternative within one face's list."""
        if self.origin is CandidateOrigin.EXPERT_CUSTOM:
            return f"custom:{self.ose}"
        return f"{self.ose}:{self.cutting_set}"


def face_in_family(attrs: FaceAttributes, family: GeometryFamily) -> bool:
    """Face membership: the geometry type matches and every family check
    passes."""
    if attrs.geometry_type is not family.required_type:
        return False
    bindings = Bindings(face=attrs)
    return all(eval_check(check, bindings) for check in family.checks)


def _envelope_fits(attrs: FaceAttributes, tool: CuttingSet) -> bool:
    """Coarse interference pre-filter: the face's own extent along the
    access direction must stay within the tool's cutting length, so the
    envelope (diameter x tool length cylinder) can sweep the face."""
    direction = attrs.primary_direction
    if direction is None:
        return True
    d = np.asarray(direction, dtype=float)
    extent = attrs.dimension_box.extent()
    depth = float(np.abs(d) @ extent)
    # Tolerance sized to the noise of fitted access directions.
    return depth <= tool.cutting_length + 1e-6


def geometric_compliance(attrs: FaceAttributes, tool: CuttingSet, ose: OSE,
                         trace: list[TraceEntry] | None = None) -> bool:
    """All compliance checks of the OSE under (face, tool) bindings, plus the
    envelope pre-filter."""
    bindings = Bindings(face=attrs, tool=tool)
    ok = True
    for check in ose.compliance_checks:
        outcome = eval_check(check, bindings)
        if trace is not None:
            trace.append(TraceEntry(str(check), "pass" if outcome else "fail"))
        if not outcome:
            ok = False
    envelope = _envelope_fits(attrs, tool)
    if trace is not None:
        trace.append(
            TraceEntry("envelope: face extent along access <= tool.cutting_length",
                       "pass" if envelope else "fail")
        )
    return ok and envelope


def manufacturing_compliance(tool: CuttingSet, config: ExtendedCuttingConditions,
                             trace: list[TraceEntry] | None = None
                             ) -> tuple[bool, Priority]:
    """Capability gate: the tool lists the config's manufacturing type and
    mode, and shares at least one TMC; passing returns the config priority."""
    has_type = config.mfg_type in tool.mfg_types
    has_mode = config.mode in tool.modes
    has_tmc = bool(set(tool.tmcs) & set(config.allowed_tmcs))
    if trace is not None:
        trace.append(TraceEntry(
            f"tool.mfg_types contains_any {{{config.mfg_type.value}}}",
            "pass" if has_type else "fail"))
        trace.append(TraceEntry(
            f"tool.modes contains_any {{{config.mode.value}}}",
            "pass" if has_mode else "fail"))
        trace.append(TraceEntry(
            f"tool.tmcs contains_any {{{', '.join(sorted(config.allowed_tmcs))}}}",
            "pass" if has_tmc else "fail"))
    return has_type and has_mode and has_tmc, config.priority


def _feed_rate_bound(tool: CuttingSet, tmc_constraints: dict[str, Interval]) -> float:
    tool_iv = tool.conditions.get("feed_rate")
    hi = tool_iv.hi if tool_iv is not None else float("inf")
    constraint = tmc_constraints.get("feed_rate")
    if constraint is not None:
        hi = min(hi, constraint.hi)
    return hi


def _choose_tmc(tool: CuttingSet, config: ExtendedCuttingConditions,
                db: OSEDatabase) -> tuple[str | None, float]:
    """Deterministic TMC choice: the common TMC with the largest feasible
    feed-rate upper bound, ties to the lexicographically smallest id."""
    common = sorted(set(tool.tmcs) & set(config.allowed_tmcs))
    if not common:
        return None, 0.0
    scored = []
    for tmc_id in common:
        tmc = db.tmcs.get(tmc_id)
        bound = _feed_rate_bound(tool, tmc.constraints if tmc else {})
        scored.append((-bound, tmc_id))
    scored.sort()
    best_bound, best_id = -scored[0][0], scored[0][1]
    return best_id, best_bound


def match_face(attrs: FaceAttributes, db: OSEDatabase,
               tools: list[CuttingSet]) -> list[Candidate]:
    """Ranked candidates for one face; an empty list means no capable
    process exists for it.

    Order: Qmax priority before Default, then larger feasible feed-rate
    upper bound, smaller tool diameter, tool id, OSE id. Ranks are
    consecutive from 1.
    """
    type_members: dict[str, set[str]] = {}
    for tool in tools:
        for cst_id in classify_tool(tool, db):
            type_members.setdefault(cst_id, set()).add(tool.id)
    tools_by_id = {tool.id: tool for tool in tools}

    raw: list[Candidate] = []
    for ose_id in sorted(db.oses):
        ose = db.oses[ose_id]
        family = db.families[ose.family]
        if not face_in_family(attrs, family):
            continue
        config = db.configs[ose.config]
        member_ids = sorted(type_members.get(ose.cutting_set_type, ()))
        for tool_id in member_ids:
            tool = tools_by_id[tool_id]
            trace: list[TraceEntry] = [
                TraceEntry(f"family {family.id}: face.geometry_type eq "
                           f"{family.required_type.value}", "pass")
            ]
            for check in family.checks:
                trace.append(TraceEntry(str(check), "pass"))  # family already passed
            geo_ok = geometric_compliance(attrs, tool, ose, trace)
            mfg_ok, priority = manufacturing_compliance(tool, config, trace)
            if not (geo_ok and mfg_ok):
                continue
            chosen_tmc, feed_bound = _choose_tmc(tool, config, db)
            raw.append(
                Candidate(
                    face=attrs.face,
                    ose=ose_id,
                    cutting_set=tool_id,
                    config=ose.config,
                    rank=0,
                    trace=trace,
                    chosen_tmc=chosen_tmc,
                    feed_rate_bound=feed_bound,
                )
            )

    def sort_key(c: Candidate):
        priority = db.configs[c.config].priority
        diameter = tools_by_id[c.cutting_set].diameter
        return (
            0 if priority is Priority.QMAX else 1,
            -c.feed_rate_bound,
            diameter,
            c.cutting_set,
            c.ose,
        )

    raw.sort(key=sort_key)
    for index, candidate in enumerate(raw):
        candidate.rank = index + 1
    return raw


_CUSTOM_REQUIRED = {"tool", "mfg_type", "mode", "tmc"}


def _validate_custom(payload: dict, db: OSEDatabase,
                     tools_by_id: dict[str, CuttingSet]) -> tuple[dict, list[str]]:
    if not isinstance(payload, dict):
        raise InvalidCustomError("custom payload must be an object")
    missing = _CUSTOM_REQUIRED - set(payload)
    if missing:
        raise InvalidCustomError(f"custom payload missing fields: {sorted(missing)}")
    if payload["tool"] not in tools_by_id:
        raise InvalidCustomError(f"unknown tool {payload['tool']!r}")
    try:
        MfgType(payload["mfg_type"])
    except ValueError as exc:
        raise InvalidCustomError(f"unknown manufacturing type {payload['mfg_type']!r}") from exc
    from .ose_db import Mode as _Mode  # local alias to avoid shadowing

    try:
        _Mode(payload["mode"])
    except ValueError as exc:
        raise InvalidCustomError(f"unknown mode {payload['mode']!r}") from exc
    if payload["tmc"] not in db.tmcs:
        raise InvalidCustomError(f"unknown TMC {payload['tmc']!r}")
    conditions = payload.get("conditions", {})
    if not isinstance(conditions, dict):
        raise InvalidCustomError("conditions must be an object of parameter values")
    warnings: list[str] = []
    tool = tools_by_id[payload["tool"]]
    tmc = db.tmcs[payload["tmc"]]
    for param, value in conditions.items():
        if param not in CONDITION_PARAMS:
            raise InvalidCustomError(f"unknown condition parameter {param!r}")
        if not isinstance(value, (int, float)):
            raise InvalidCustomError(f"condition {param} must be numeric")
        bounds = tool.conditions.get(param)
        if bounds is not None and not bounds.contains(value):
            warnings.append(
                f"{param}={value} outside tool range [{bounds.lo}, {bounds.hi}]")
        constraint = tmc.constraints.get(param)
        if constraint is not None and not constraint.contains(value):
            warnings.append(
                f"{param}={value} outside TMC constraint [{constraint.lo}, {constraint.hi}]")
    return dict(payload), warnings


def select_candidate(candidates: list[Candidate], level: int,
                     payload: object = None, *,
                     db: OSEDatabase | None = None,
                     tools: list[CuttingSet] | None = None) -> list[Candidate]:
    """Apply a selection at one of the three expert levels.

    Level 1 selects the rank-1 default; level 2 selects an existing
    alternative by key; level 3 installs an ExpertCustom candidate built
    from the payload, keeping all alternatives. Out-of-range custom
    conditions are accepted but flagged with warnings.
    """
    updated = [replace(c, selected=False, trace=list(c.trace),
                       warnings=list(c.warnings)) for c in candidates]
    if level == 1:
        if not updated:
            raise NoSuchAlternativeError("face has no candidates")
        for c in updated:
            if c.origin is not CandidateOrigin.EXPERT_CUSTOM and c.rank == min(
                x.rank for x in updated if x.origin is not CandidateOrigin.EXPERT_CUSTOM
            ):
                c.selected = True
                c.origin = CandidateOrigin.DEFAULT
                break
        return updated
    if level == 2:
        wanted = str(payload)
        for c in updated:
            if c.key == wanted:
                c.selected = True
                if c.origin is not CandidateOrigin.EXPERT_CUSTOM:
                    c.origin = CandidateOrigin.EXPERT_CHOICE
                return updated
        raise NoSuchAlternativeError(f"no such alternative {wanted!r}")
    if level == 3:
        if db is None or tools is None:
            raise InvalidCustomError("level-3 selection needs the database and tool set")
        tools_by_id = {t.id: t for t in tools}
        data, warnings = _validate_custom(payload, db, tools_by_id)
        face_id = candidates[0].face if candidates else data.get("face", "")
        custom = Candidate(
            face=face_id,
            ose=f"custom-{len([c for c in updated if c.origin is CandidateOrigin.EXPERT_CUSTOM]) + 1}",
            cutting_set=data["tool"],
            config="custom",
            rank=(max((c.rank for c in updated), default=0) + 1),
            trace=[TraceEntry("expert custom configuration", "pass")],
            selected=True,
            origin=CandidateOrigin.EXPERT_CUSTOM,
            chosen_tmc=data["tmc"],
            warnings=warnings,
            custom=data,
        )
        updated.append(custom)
        return updated
    raise InvalidCustomError(f"unknown selection level {level!r}")
