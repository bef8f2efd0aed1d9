"""JSON file formats: parts, tool sets, OSE databases, attributes,
candidates and plan documents.

All documents are UTF-8 JSON. Collections are lists of objects with "id"
fields so duplicate ids are detectable. Parse errors carry the JSON path of
the offending field; numbers round-trip exactly through json's repr-based
float formatting, which keeps document emission byte-stable.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

import numpy as np

from .automation_report import SynthesisTable
from .match_engine import Candidate, CandidateOrigin, TraceEntry
from .ose_db import (
    CONDITION_PARAMS,
    AttributeRef,
    Check,
    CuttingSet,
    CuttingSetType,
    ExtendedCuttingConditions,
    GeometryFamily,
    Interval,
    Mode,
    OSE,
    OSEDatabase,
    Priority,
    TMC,
    TrajectoryStrategy,
)
from .part_model import Adjacency, Part, SampledFace
from .transform import (
    AccessDirection,
    AccessKind,
    DirectionDims,
    FaceAttributes,
    GeometryType,
    MfgType,
    Openness,
    TransformResult,
    UNBOUNDED,
)
from .part_model import Box3, Point3

__all__ = [
    "SchemaError",
    "dumps",
    "database_version",
    "parse_part",
    "serialize_part",
    "parse_tools",
    "serialize_tools",
    "parse_osedb",
    "serialize_osedb",
    "serialize_attributes",
    "parse_attributes",
    "serialize_candidates",
    "parse_candidates",
]


class SchemaError(ValueError):
    """A document violates the schema; message names the JSON path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def dumps(data: Any) -> str:
    """Canonical JSON used for every emitted document."""
    return json.dumps(data, sort_keys=True, separators=(",", ": "), indent=1)


def database_version(data: Any) -> str:
    digest = hashlib.sha256(dumps(data).encode("utf-8")).hexdigest()
    return digest[:12]


def _require(data: dict, key: str, path: str) -> Any:
    if key not in data:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return data[key]


def _number(value: Any, path: str, positive: bool = False) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SchemaError(path, f"expected a number, got {value!r}")
    if positive and value <= 0:
        raise SchemaError(path, f"expected a positive number, got {value!r}")
    return float(value)


def _interval(value: Any, path: str) -> Interval:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError(path, f"expected [min, max], got {value!r}")
    return Interval(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))


def _enum(value: Any, enum_cls, path: str):
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise SchemaError(path, f"{value!r} not one of: {allowed}") from None


# ---------------------------------------------------------------------------
# parts


def parse_part(data: dict) -> Part:
    if not isinstance(data, dict):
        raise SchemaError("$", "part document must be an object")
    part_id = str(_require(data, "id", "$"))
    units = data.get("units", "mm")
    faces_data = _require(data, "faces", "$")
    if not isinstance(faces_data, list) or not faces_data:
        raise SchemaError("$.faces", "expected a non-empty list of faces")
    faces: list[SampledFace] = []
    for i, fd in enumerate(faces_data):
        path = f"$.faces[{i}]"
        face_id = str(_require(fd, "id", path))
        grid_data = _require(fd, "grid", path)
        if not isinstance(grid_data, list) or len(grid_data) < 2:
            raise SchemaError(f"{path}.grid", "expected at least 2 rows")
        width = None
        for r, row in enumerate(grid_data):
            if not isinstance(row, list) or len(row) < 2:
                raise SchemaError(f"{path}.grid[{r}]", "expected at least 2 samples per row")
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise SchemaError(f"{path}.grid[{r}]", "grid is not rectangular")
            for c, sample in enumerate(row):
                if not isinstance(sample, list) or len(sample) != 3:
                    raise SchemaError(f"{path}.grid[{r}][{c}]", "expected [x, y, z]")
        grid = np.asarray(grid_data, dtype=float)
        adjacency = []
        for a, ad in enumerate(fd.get("adjacency", [])):
            apath = f"{path}.adjacency[{a}]"
            adjacency.append(
                Adjacency(
                    face=str(_require(ad, "face", apath)),
                    material_angle=_number(
                        _require(ad, "material_angle_deg", apath), f"{apath}.material_angle_deg"
                    ),
                )
            )
        faces.append(
            SampledFace(id=face_id, grid=grid, adjacency=adjacency, label=fd.get("label"))
        )
    return Part(id=part_id, faces=faces, units=str(units))


def serialize_part(part: Part) -> dict:
    return {
        "id": part.id,
        "units": part.units,
        "faces": [
            {
                "id": f.id,
                "grid": f.grid.tolist(),
                "adjacency": [
                    {"face": a.face, "material_angle_deg": a.material_angle}
                    for a in f.adjacency
                ],
                **({"label": f.label} if f.label else {}),
            }
            for f in part.faces
        ],
    }


# ---------------------------------------------------------------------------
# tools


def _parse_conditions(data: Any, path: str) -> dict[str, Interval]:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise SchemaError(path, "conditions must map parameter names to [min, max]")
    out: dict[str, Interval] = {}
    for param, rng in data.items():
        if param not in CONDITION_PARAMS:
            raise SchemaError(f"{path}.{param}", "unknown cutting condition parameter")
        out[param] = _interval(rng, f"{path}.{param}")
    return out


def parse_tools(data: Any) -> list[CuttingSet]:
    if not isinstance(data, list):
        raise SchemaError("$", "tools document must be a list of cutting sets")
    tools: list[CuttingSet] = []
    seen: set[str] = set()
    for i, td in enumerate(data):
        path = f"$[{i}]"
        tool_id = str(_require(td, "id", path))
        if tool_id in seen:
            raise SchemaError(f"{path}.id", f"duplicate tool id {tool_id!r}")
        seen.add(tool_id)
        diameter = _number(_require(td, "diameter", path), f"{path}.diameter", positive=True)
        cutting_length = _number(
            _require(td, "cutting_length", path), f"{path}.cutting_length", positive=True
        )
        tool_length = _number(
            _require(td, "tool_length", path), f"{path}.tool_length", positive=True
        )
        end_radius = _number(_require(td, "end_radius", path), f"{path}.end_radius")
        if end_radius < 0:
            raise SchemaError(f"{path}.end_radius", "must be non-negative")
        if cutting_length > tool_length:
            raise SchemaError(f"{path}.cutting_length", "must not exceed tool_length")
        tools.append(
            CuttingSet(
                id=tool_id,
                diameter=diameter,
                cutting_length=cutting_length,
                tool_length=tool_length,
                end_radius=end_radius,
                cutting_material=str(_require(td, "cutting_material", path)),
                mfg_types=tuple(
                    _enum(v, MfgType, f"{path}.mfg_types[{k}]")
                    for k, v in enumerate(_require(td, "mfg_types", path))
                ),
                modes=tuple(
                    _enum(v, Mode, f"{path}.modes[{k}]")
                    for k, v in enumerate(_require(td, "modes", path))
                ),
                tmcs=tuple(str(v) for v in _require(td, "tmcs", path)),
                conditions=_parse_conditions(td.get("conditions"), f"{path}.conditions"),
            )
        )
    return tools


def serialize_tools(tools: list[CuttingSet]) -> list[dict]:
    return [
        {
            "id": t.id,
            "diameter": t.diameter,
            "cutting_length": t.cutting_length,
            "tool_length": t.tool_length,
            "end_radius": t.end_radius,
            "cutting_material": t.cutting_material,
            "mfg_types": [m.value for m in t.mfg_types],
            "modes": [m.value for m in t.modes],
            "tmcs": list(t.tmcs),
            "conditions": {p: [iv.lo, iv.hi] for p, iv in sorted(t.conditions.items())},
        }
        for t in tools
    ]


# ---------------------------------------------------------------------------
# checks and the OSE database


def parse_check(data: dict, path: str) -> Check:
    lhs = AttributeRef.parse(str(_require(data, "lhs", path)))
    op = str(_require(data, "op", path))
    rhs = _require(data, "rhs", path)
    ref = value = None
    values = None
    if isinstance(rhs, dict):
        forms = [k for k in ("ref", "value", "any_of", "all_of") if k in rhs]
        if len(forms) != 1:
            raise SchemaError(f"{path}.rhs", "expected exactly one of ref/value/any_of/all_of")
        form = forms[0]
        if form == "ref":
            ref = AttributeRef.parse(str(rhs["ref"]))
        elif form == "value":
            value = rhs["value"]
        else:
            values = tuple(rhs[form])
    else:
        raise SchemaError(f"{path}.rhs", "rhs must be an object like {\"value\": 5}")
    return Check(lhs=lhs, op=op, ref=ref, value=value, values=values)


def serialize_check(check: Check) -> dict:
    if check.ref is not None:
        rhs: dict = {"ref": str(check.ref)}
    elif check.values is not None:
        key = "all_of" if check.op == "contains_all" else "any_of"
        rhs = {key: list(check.values)}
    else:
        rhs = {"value": check.value}
    return {"lhs": str(check.lhs), "op": check.op, "rhs": rhs}


def _unique_ids(items: list[dict], path: str) -> None:
    seen: set[str] = set()
    for i, item in enumerate(items):
        iid = str(_require(item, "id", f"{path}[{i}]"))
        if iid in seen:
            raise SchemaError(f"{path}[{i}].id", f"duplicate id {iid!r}")
        seen.add(iid)


def parse_osedb(data: dict) -> OSEDatabase:
    if not isinstance(data, dict):
        raise SchemaError("$", "database document must be an object")
    for key in ("families", "configs", "cutting_set_types", "tmcs", "oses"):
        section = _require(data, key, "$")
        if not isinstance(section, list):
            raise SchemaError(f"$.{key}", "expected a list")
        _unique_ids(section, f"$.{key}")

    tmcs: dict[str, TMC] = {}
    for i, td in enumerate(data["tmcs"]):
        path = f"$.tmcs[{i}]"
        tmcs[td["id"]] = TMC(
            id=td["id"],
            cut_material=str(_require(td, "cut_material", path)),
            cutting_material=str(_require(td, "cutting_material", path)),
            constraints=_parse_conditions(td.get("constraints"), f"{path}.constraints"),
            lubrication=str(td.get("lubrication", "Dry")),
        )

    families: dict[str, GeometryFamily] = {}
    for i, fd in enumerate(data["families"]):
        path = f"$.families[{i}]"
        families[fd["id"]] = GeometryFamily(
            id=fd["id"],
            required_type=_enum(
                _require(fd, "required_type", path), GeometryType, f"{path}.required_type"
            ),
            checks=tuple(
                parse_check(cd, f"{path}.checks[{k}]")
                for k, cd in enumerate(fd.get("checks", []))
            ),
        )

    configs: dict[str, ExtendedCuttingConditions] = {}
    for i, cd in enumerate(data["configs"]):
        path = f"$.configs[{i}]"
        trajectory = cd.get("trajectory_strategy")
        configs[cd["id"]] = ExtendedCuttingConditions(
            id=cd["id"],
            mfg_type=_enum(_require(cd, "mfg_type", path), MfgType, f"{path}.mfg_type"),
            mode=_enum(_require(cd, "mode", path), Mode, f"{path}.mode"),
            allowed_tmcs=tuple(str(v) for v in _require(cd, "allowed_tmcs", path)),
            priority=_enum(cd.get("priority", "Default"), Priority, f"{path}.priority"),
            trajectory_strategy=(
                _enum(trajectory, TrajectoryStrategy, f"{path}.trajectory_strategy")
                if trajectory is not None
                else None
            ),
        )

    cutting_set_types: dict[str, CuttingSetType] = {}
    for i, sd in enumerate(data["cutting_set_types"]):
        path = f"$.cutting_set_types[{i}]"
        cutting_set_types[sd["id"]] = CuttingSetType(
            id=sd["id"],
            diameter=_interval(_require(sd, "diameter", path), f"{path}.diameter"),
            cutting_length=_interval(
                _require(sd, "cutting_length", path), f"{path}.cutting_length"
            ),
            tool_length=_interval(_require(sd, "tool_length", path), f"{path}.tool_length"),
            end_radius=_interval(_require(sd, "end_radius", path), f"{path}.end_radius"),
            cutting_material=str(_require(sd, "cutting_material", path)),
            mfg_types=tuple(
                _enum(v, MfgType, f"{path}.mfg_types[{k}]")
                for k, v in enumerate(_require(sd, "mfg_types", path))
            ),
            modes=tuple(
                _enum(v, Mode, f"{path}.modes[{k}]")
                for k, v in enumerate(_require(sd, "modes", path))
            ),
            tmcs=tuple(str(v) for v in _require(sd, "tmcs", path)),
            conditions=_parse_conditions(sd.get("conditions"), f"{path}.conditions"),
        )

    oses: dict[str, OSE] = {}
    for i, od in enumerate(data["oses"]):
        path = f"$.oses[{i}]"
        oses[od["id"]] = OSE(
            id=od["id"],
            family=str(_require(od, "family", path)),
            config=str(_require(od, "config", path)),
            cutting_set_type=str(_require(od, "cutting_set_type", path)),
            compliance_checks=tuple(
                parse_check(cd, f"{path}.checks[{k}]")
                for k, cd in enumerate(od.get("checks", []))
            ),
        )

    return OSEDatabase(
        families=families,
        configs=configs,
        cutting_set_types=cutting_set_types,
        tmcs=tmcs,
        oses=oses,
    )


def serialize_osedb(db: OSEDatabase) -> dict:
    return {
        "families": [
            {
                "id": f.id,
                "required_type": f.required_type.value,
                "checks": [serialize_check(c) for c in f.checks],
            }
            for f in db.families.values()
        ],
        "configs": [
            {
                "id": c.id,
                "mfg_type": c.mfg_type.value,
                "mode": c.mode.value,
                "allowed_tmcs": list(c.allowed_tmcs),
                "priority": c.priority.value,
                **(
                    {"trajectory_strategy": c.trajectory_strategy.value}
                    if c.trajectory_strategy is not None
                    else {}
                ),
            }
            for c in db.configs.values()
        ],
        "cutting_set_types": [
            {
                "id": s.id,
                "diameter": [s.diameter.lo, s.diameter.hi],
                "cutting_length": [s.cutting_length.lo, s.cutting_length.hi],
                "tool_length": [s.tool_length.lo, s.tool_length.hi],
                "end_radius": [s.end_radius.lo, s.end_radius.hi],
                "cutting_material": s.cutting_material,
                "mfg_types": [m.value for m in s.mfg_types],
                "modes": [m.value for m in s.modes],
                "tmcs": list(s.tmcs),
                "conditions": {p: [iv.lo, iv.hi] for p, iv in sorted(s.conditions.items())},
            }
            for s in db.cutting_set_types.values()
        ],
        "tmcs": [
            {
                "id": t.id,
                "cut_material": t.cut_material,
                "cutting_material": t.cutting_material,
                "constraints": {p: [iv.lo, iv.hi] for p, iv in sorted(t.constraints.items())},
                "lubrication": t.lubrication,
            }
            for t in db.tmcs.values()
        ],
        "oses": [
            {
                "id": o.id,
                "family": o.family,
                "config": o.config,
                "cutting_set_type": o.cutting_set_type,
                "checks": [serialize_check(c) for c in o.compliance_checks],
            }
            for o in db.oses.values()
        ],
    }


# ---------------------------------------------------------------------------
# attributes


def _fillet_to_json(value: float) -> object:
    return "Unbounded" if value == UNBOUNDED else value


def _fillet_from_json(value: object) -> float:
    return UNBOUNDED if value == "Unbounded" else float(value)


def serialize_attributes(result: TransformResult, synthesis: SynthesisTable) -> dict:
    faces = []
    for a in result.attributes:
        faces.append(
            {
                "face": a.face,
                "geometry_type": a.geometry_type.value,
                "fit_residual": a.fit_residual,
                "openness": a.openness.value,
                "edge_openness": [[f, o.value] for f, o in a.edge_openness],
                "access": [
                    {
                        "direction": list(d.direction),
                        "kind": d.kind.value,
                        "compulsory": d.compulsory,
                    }
                    for d in a.access
                ],
                "end_accessibility": a.end_accessibility,
                "flank_accessibility": a.flank_accessibility,
                "global_accessibility": a.global_accessibility,
                "min_fillet_radius": _fillet_to_json(a.min_fillet_radius),
                "dimension_box": {
                    "min": [a.dimension_box.min_corner.x, a.dimension_box.min_corner.y,
                            a.dimension_box.min_corner.z],
                    "max": [a.dimension_box.max_corner.x, a.dimension_box.max_corner.y,
                            a.dimension_box.max_corner.z],
                },
                "potential_mfg_types": [m.value for m in a.potential_mfg_types],
                "per_direction": [
                    {
                        "direction": list(d.direction),
                        "end_accessibility": d.end_accessibility,
                        "flank_accessibility": d.flank_accessibility,
                        "global_accessibility": d.global_accessibility,
                    }
                    for d in a.per_direction
                ],
                "primary_direction": list(a.primary_direction) if a.primary_direction else None,
                "inaccessible": a.inaccessible,
                "mean_normal": list(a.mean_normal) if a.mean_normal else None,
                "axis_direction": list(a.axis_direction) if a.axis_direction else None,
                "ruling_direction": list(a.ruling_direction) if a.ruling_direction else None,
                "radius": a.radius,
            }
        )
    return {
        "part": result.part,
        "synthesis": synthesis.to_json(),
        "faces": faces,
        "inaccessible": list(result.inaccessible),
    }


def parse_attributes(data: dict) -> TransformResult:
    attributes: list[FaceAttributes] = []
    counts: dict[GeometryType, int] = {t: 0 for t in GeometryType}
    for fd in data.get("faces", []):
        gtype = GeometryType(fd["geometry_type"])
        counts[gtype] += 1
        box = fd["dimension_box"]
        attributes.append(
            FaceAttributes(
                face=fd["face"],
                geometry_type=gtype,
                fit_residual=fd["fit_residual"],
                openness=Openness(fd["openness"]),
                edge_openness=[(f, Openness(o)) for f, o in fd.get("edge_openness", [])],
                access=[
                    AccessDirection(
                        direction=tuple(d["direction"]),
                        kind=AccessKind(d["kind"]),
                        compulsory=d["compulsory"],
                    )
                    for d in fd.get("access", [])
                ],
                end_accessibility=fd["end_accessibility"],
                flank_accessibility=fd["flank_accessibility"],
                global_accessibility=fd["global_accessibility"],
                min_fillet_radius=_fillet_from_json(fd["min_fillet_radius"]),
                dimension_box=Box3(Point3(*box["min"]), Point3(*box["max"])),
                potential_mfg_types=[MfgType(m) for m in fd.get("potential_mfg_types", [])],
                per_direction=[
                    DirectionDims(
                        direction=tuple(d["direction"]),
                        end_accessibility=d["end_accessibility"],
                        flank_accessibility=d["flank_accessibility"],
                        global_accessibility=d["global_accessibility"],
                    )
                    for d in fd.get("per_direction", [])
                ],
                primary_direction=(
                    tuple(fd["primary_direction"]) if fd.get("primary_direction") else None
                ),
                inaccessible=fd.get("inaccessible", False),
                mean_normal=tuple(fd["mean_normal"]) if fd.get("mean_normal") else None,
                axis_direction=(
                    tuple(fd["axis_direction"]) if fd.get("axis_direction") else None
                ),
                ruling_direction=(
                    tuple(fd["ruling_direction"]) if fd.get("ruling_direction") else None
                ),
                radius=fd.get("radius"),
            )
        )
    return TransformResult(
        part=data.get("part", ""),
        attributes=attributes,
        counts=counts,
        inaccessible=list(data.get("inaccessible", [])),
    )


# ---------------------------------------------------------------------------
# candidates


def serialize_candidates(candidates_by_face: dict[str, list[Candidate]]) -> dict:
    return {
        "faces": {
            face_id: [
                {
                    "key": c.key,
                    "ose": c.ose,
                    "cutting_set": c.cutting_set,
                    "config": c.config,
                    "rank": c.rank,
                    "selected": c.selected,
                    "origin": c.origin.value,
                    "chosen_tmc": c.chosen_tmc,
                    "feed_rate_bound": c.feed_rate_bound,
                    "warnings": list(c.warnings),
                    "custom": c.custom,
                    "trace": [{"check": t.check, "outcome": t.outcome} for t in c.trace],
                }
                for c in candidates
            ]
            for face_id, candidates in candidates_by_face.items()
        },
        "unmatched": sorted(
            face_id for face_id, cs in candidates_by_face.items() if not cs
        ),
    }


def parse_candidates(data: dict) -> dict[str, list[Candidate]]:
    out: dict[str, list[Candidate]] = {}
    for face_id, items in data.get("faces", {}).items():
        out[face_id] = [
            Candidate(
                face=face_id,
                ose=c["ose"],
                cutting_set=c["cutting_set"],
                config=c["config"],
                rank=c["rank"],
                trace=[TraceEntry(t["check"], t["outcome"]) for t in c.get("trace", [])],
                selected=c.get("selected", False),
                origin=CandidateOrigin(c.get("origin", "Default")),
                chosen_tmc=c.get("chosen_tmc"),
                feed_rate_bound=c.get("feed_rate_bound", 0.0),
                warnings=list(c.get("warnings", [])),
                custom=c.get("custom"),
            )
            for c in items
        ]
    return out
