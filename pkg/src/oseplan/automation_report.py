"""Automation phase: cutting-condition resolution, plan documentation and
synthesis statistics.

Condition values are resolved per parameter on the intersection of the tool
range and the TMC constraint: Qmax priority takes the interval maximum (the
productivity-first reading of the priority tag), Default takes the midpoint.
The documentation is emitted both as machine-readable JSON and as a
human-readable text rendering carrying the full check traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .ose_db import CONDITION_PARAMS, CuttingSet, Interval, OSEDatabase, Priority, TMC
from .setup_plan import ProcessPlan, Sequence, Setup
from .transform import GeometryType, TYPE_ORDER

__all__ = [
    "InfeasibleConditionsError",
    "ResolvedConditions",
    "SynthesisRow",
    "SynthesisTable",
    "optimize_conditions",
    "report_statistics",
    "generate_documentation",
    "parse_plan_document",
]


class InfeasibleConditionsError(ValueError):
    """The feasible interval of one parameter is empty for this candidate."""

    def __init__(self, parameter: str, detail: str = ""):
        super().__init__(f"infeasible conditions for {parameter!r}" + (f": {detail}" if detail else ""))
        self.parameter = parameter


@dataclass
class ResolvedConditions:
    values: dict[str, float]
    intervals: dict[str, tuple[float, float]]
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "values": {k: self.values[k] for k in sorted(self.values)},
            "intervals": {k: list(self.intervals[k]) for k in sorted(self.intervals)},
            "warnings": list(self.warnings),
        }

    @staticmethod
    def from_json(data: dict) -> "ResolvedConditions":
        return ResolvedConditions(
            values=dict(data.get("values", {})),
            intervals={k: (v[0], v[1]) for k, v in data.get("intervals", {}).items()},
            warnings=list(data.get("warnings", [])),
        )


def optimize_conditions(priority: Priority, tool: CuttingSet, tmc: TMC | None,
                        custom_values: dict[str, float] | None = None,
                        custom_warnings: list[str] | None = None) -> ResolvedConditions:
    """Resolve every cutting parameter on tool range intersect TMC constraint.

    Qmax sets each parameter to the feasible maximum, Default to the
    midpoint. An empty feasible interval raises, naming the parameter, so the
    caller can demote the candidate. Expert-custom values override the
    optimum and keep their warnings.
    """
    values: dict[str, float] = {}
    intervals: dict[str, tuple[float, float]] = {}
    constraints = tmc.constraints if tmc is not None else {}
    for param in CONDITION_PARAMS:
        tool_iv = tool.conditions.get(param)
        constraint = constraints.get(param)
        if tool_iv is None and constraint is None:
            continue
        if tool_iv is None:
            feasible = constraint
        elif constraint is None:
            feasible = tool_iv
        else:
            feasible = Interval(max(tool_iv.lo, constraint.lo), min(tool_iv.hi, constraint.hi))
        if feasible.lo > feasible.hi:
            raise InfeasibleConditionsError(
                param, f"tool [{tool_iv.lo}, {tool_iv.hi}] vs TMC [{constraint.lo}, {constraint.hi}]"
            )
        intervals[param] = (feasible.lo, feasible.hi)
        if priority is Priority.QMAX:
            values[param] = feasible.hi
        else:
            values[param] = 0.5 * (feasible.lo + feasible.hi)
    warnings = list(custom_warnings or [])
    if custom_values:
        for param, value in custom_values.items():
            values[param] = float(value)
    return ResolvedConditions(values=values, intervals=intervals, warnings=warnings)


# ---------------------------------------------------------------------------
# synthesis statistics


@dataclass(frozen=True)
class SynthesisRow:
    geometry_type: str
    count: int
    percentage: float


@dataclass
class SynthesisTable:
    rows: list[SynthesisRow]
    total: int
    total_percentage: float

    def to_json(self) -> dict:
        return {
            "rows": [
                {"type": r.geometry_type, "count": r.count, "percentage": r.percentage}
                for r in self.rows
            ],
            "total": self.total,
            "total_percentage": self.total_percentage,
        }

    @staticmethod
    def from_json(data: dict) -> "SynthesisTable":
        return SynthesisTable(
            rows=[
                SynthesisRow(r["type"], r["count"], r["percentage"])
                for r in data.get("rows", [])
            ],
            total=data.get("total", 0),
            total_percentage=data.get("total_percentage", 0.0),
        )


def _percentage(count: int, total: int) -> float:
    value = (Decimal(count) * Decimal(100)) / Decimal(total)
    return float(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def report_statistics(counts: dict[GeometryType, int]) -> SynthesisTable:
    """Counts and half-up two-decimal percentages per geometry type.

    Rows follow the fixed type order; the totals row carries the count sum
    and the sum of the rounded percentages.
    """
    total = sum(counts.values())
    if total <= 0:
        raise ValueError("empty population: total face count must be positive")
    rows = [
        SynthesisRow(
            geometry_type=t.value,
            count=counts.get(t, 0),
            percentage=_percentage(counts.get(t, 0), total),
        )
        for t in TYPE_ORDER
    ]
    total_pct = float(
        sum(Decimal(str(r.percentage)) for r in rows).quantize(Decimal("0.01"))
    )
    return SynthesisTable(rows=rows, total=total, total_percentage=total_pct)


# ---------------------------------------------------------------------------
# documentation


def generate_documentation(plan: ProcessPlan, db: OSEDatabase,
                           tools: list[CuttingSet]) -> tuple[dict, str]:
    """Emit the plan document: a JSON structure and its text rendering.

    Every part face appears exactly once, either in a setup body or in an
    exception section; each sequence carries its resolved conditions and the
    full check trace that justifies the choice.
    """
    tools_by_id = {t.id: t for t in tools}
    doc: dict = {
        "part": plan.part,
        "database_version": plan.database_version,
        "synthesis": plan.synthesis.to_json() if plan.synthesis is not None else None,
        "setups": [
            {"id": s.id, "direction": list(s.direction), "faces": list(s.faces)}
            for s in plan.setups
        ],
        "sequences": [],
        "exceptions": {
            "unmatched": list(plan.unmatched),
            "inaccessible": list(plan.inaccessible),
        },
        "tensions": list(plan.tensions),
    }
    for seq in plan.sequences:
        config = db.configs.get(seq.config)
        trajectory = None
        if config is not None and config.trajectory_strategy is not None:
            trajectory = config.trajectory_strategy.value
        if seq.custom is not None:
            trajectory = seq.custom.get("trajectory_strategy", trajectory)
        conditions = plan.conditions.get(seq.id)
        doc["sequences"].append(
            {
                "id": seq.id,
                "setup": seq.setup,
                "faces": list(seq.faces),
                "ose": seq.ose,
                "cutting_set": seq.cutting_set,
                "config": seq.config,
                "mode": seq.mode.value if seq.mode is not None else None,
                "tmc": seq.chosen_tmc,
                "trajectory_strategy": trajectory,
                "origin": seq.origin,
                "custom": seq.custom,
                "conditions": conditions.to_json() if conditions is not None else None,
                "trace": [{"check": t.check, "outcome": t.outcome} for t in seq.trace],
            }
        )

    lines: list[str] = []
    lines.append(f"PROCESS PLAN - part {plan.part}")
    if plan.database_version:
        lines.append(f"database version: {plan.database_version}")
    lines.append("")
    if plan.synthesis is not None:
        lines.append("FACE SYNTHESIS")
        for row in plan.synthesis.rows:
            lines.append(f"  {row.geometry_type:<18} {row.count:>4}  {row.percentage:>7.2f} %")
        lines.append(f"  {'TOTAL':<18} {plan.synthesis.total:>4}  {plan.synthesis.total_percentage:>7.2f} %")
        lines.append("")
    for setup in plan.setups:
        direction = "(" + ", ".join(f"{c:g}" for c in setup.direction) + ")"
        lines.append(f"SETUP {setup.id}  direction {direction}")
        lines.append(f"  faces: {', '.join(setup.faces)}")
        for seq in plan.sequences:
            if seq.setup != setup.id:
                continue
            tool = tools_by_id.get(seq.cutting_set)
            tool_label = f"{seq.cutting_set}" + (
                f" (d={tool.diameter:g} mm)" if tool is not None else ""
            )
            lines.append(
                f"  sequence {seq.id}: faces {', '.join(seq.faces)}"
            )
            lines.append(
                f"    ose {seq.ose} | cutting set {tool_label} | mode {seq.mode.value if seq.mode else '-'}"
                f" | tmc {seq.chosen_tmc or '-'}"
            )
            conditions = plan.conditions.get(seq.id)
            if conditions is not None:
                rendered = ", ".join(
                    f"{k}={conditions.values[k]:g}" for k in sorted(conditions.values)
                )
                lines.append(f"    conditions: {rendered}")
                for warning in conditions.warnings:
                    lines.append(f"    warning: {warning}")
            for entry in seq.trace:
                lines.append(f"    [{entry.outcome}] {entry.check}")
        lines.append("")
    if plan.unmatched:
        lines.append("EXCEPTIONS - no capable process")
        for face in plan.unmatched:
            lines.append(f"  {face}")
        lines.append("")
    if plan.inaccessible:
        lines.append("EXCEPTIONS - inaccessible faces")
        for face in plan.inaccessible:
            lines.append(f"  {face}")
        lines.append("")
    if plan.tensions:
        lines.append("REVIEW - direction/candidate tension")
        for face in plan.tensions:
            lines.append(f"  {face}")
        lines.append("")
    return doc, "\n".join(lines)


def parse_plan_document(doc: dict) -> ProcessPlan:
    """Rebuild a ProcessPlan from its JSON document (round-trip inverse of
    generate_documentation)."""
    from .match_engine import TraceEntry
    from .ose_db import Mode

    setups = [
        Setup(id=s["id"], direction=tuple(s["direction"]), faces=list(s["faces"]))
        for s in doc.get("setups", [])
    ]
    sequences: list[Sequence] = []
    conditions: dict[str, ResolvedConditions] = {}
    for s in doc.get("sequences", []):
        sequences.append(
            Sequence(
                id=s["id"],
                setup=s["setup"],
                faces=list(s["faces"]),
                ose=s["ose"],
                cutting_set=s["cutting_set"],
                config=s["config"],
                mode=Mode(s["mode"]) if s.get("mode") else None,
                chosen_tmc=s.get("tmc"),
                trace=[TraceEntry(t["check"], t["outcome"]) for t in s.get("trace", [])],
                origin=s.get("origin", "Default"),
                custom=s.get("custom"),
            )
        )
        if s.get("conditions") is not None:
            conditions[s["id"]] = ResolvedConditions.from_json(s["conditions"])
    synthesis = None
    if doc.get("synthesis") is not None:
        synthesis = SynthesisTable.from_json(doc["synthesis"])
    return ProcessPlan(
        part=doc["part"],
        setups=setups,
        sequences=sequences,
        conditions=conditions,
        unmatched=list(doc.get("exceptions", {}).get("unmatched", [])),
        inaccessible=list(doc.get("exceptions", {}).get("inaccessible", [])),
        tensions=list(doc.get("tensions", [])),
        synthesis=synthesis,
        database_version=doc.get("database_version"),
    )
