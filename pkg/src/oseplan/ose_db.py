"""The OSE knowledge base: one database linking geometry families, extended
cutting conditions and cutting-set types, with cross-namespace checks.

Every rule is a conjunction of elementary pass/fail checks (no else branch);
alternation is expressed as several OSE entries. The module also carries the
maintenance tooling an expert needs when editing the base: structural
validation, sorting of new tools into cutting-set types, an audit for
shadowed / unsatisfiable / duplicated OSEs over an endpoint grid, and
single-field what-if expansion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .transform import GeometryType, MfgType

__all__ = [
    "Mode",
    "TrajectoryStrategy",
    "Priority",
    "Interval",
    "AttributeRef",
    "Check",
    "GeometryFamily",
    "TMC",
    "ExtendedCuttingConditions",
    "CuttingSetType",
    "CuttingSet",
    "OSE",
    "OSEDatabase",
    "Finding",
    "AuditReport",
    "CONDITION_PARAMS",
    "FACE_VOCABULARY",
    "TOOL_VOCABULARY",
    "CONFIG_VOCABULARY",
    "validate_db",
    "classify_tool",
    "audit_database",
    "what_if_expand",
]


class Mode(str, Enum):
    ROUGHING = "Roughing"
    SEMI_FINISHING = "SemiFinishing"
    FINISHING = "Finishing"


class TrajectoryStrategy(str, Enum):
    FORTH = "Forth"
    BACK_AND_FORTH = "BackAndForth"
    IN_OUT_SPIRAL = "InOutSpiral"
    OUT_IN_SPIRAL = "OutInSpiral"
    NORMAL_DRILLING = "NormalDrilling"
    DEBURRING = "Deburring"
    FLANK = "Flank"
    SWEEPING = "Sweeping"


class Priority(str, Enum):
    QMAX = "Qmax"
    DEFAULT = "Default"


#: Cutting condition parameters carried by tools, types and TMC constraints.
CONDITION_PARAMS = ["cutting_speed", "feed_per_tooth", "advance_x", "advance_z", "feed_rate"]

TOOL_SCALARS = ["diameter", "cutting_length", "tool_length", "end_radius"]

FACE_VOCABULARY = {
    "geometry_type": "categorical",
    "openness": "categorical",
    "access_kinds": "list",
    "access_compulsory": "bool",
    "end_accessibility": "numeric",
    "flank_accessibility": "numeric",
    "global_accessibility": "numeric",
    "min_fillet_radius": "numeric",
    "fit_residual": "numeric",
    "potential_mfg_types": "list",
}

TOOL_VOCABULARY = {
    "diameter": "numeric",
    "cutting_length": "numeric",
    "tool_length": "numeric",
    "end_radius": "numeric",
    "cutting_material": "categorical",
    "mfg_types": "list",
    "modes": "list",
    "tmcs": "list",
    **{f"{p}_min": "numeric" for p in CONDITION_PARAMS},
    **{f"{p}_max": "numeric" for p in CONDITION_PARAMS},
}

CONFIG_VOCABULARY = {
    "mfg_type": "categorical",
    "mode": "categorical",
    "trajectory_strategy": "categorical",
    "allowed_tmcs": "list",
    "priority": "categorical",
}

_VOCABULARIES = {"face": FACE_VOCABULARY, "tool": TOOL_VOCABULARY, "config": CONFIG_VOCABULARY}

SCALAR_OPS = {"lt", "le", "gt", "ge"}
CONTAINS_OPS = {"contains_any", "contains_all"}
ALL_OPS = SCALAR_OPS | CONTAINS_OPS | {"eq"}


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def valid(self) -> bool:
        return self.lo <= self.hi


@dataclass(frozen=True)
class AttributeRef:
    namespace: str  # face | tool | config
    name: str

    @staticmethod
    def parse(text: str) -> "AttributeRef":
        namespace, _, name = text.partition(".")
        return AttributeRef(namespace, name)

    def __str__(self) -> str:
        return f"{self.namespace}.{self.name}"

    def kind(self) -> str | None:
        vocab = _VOCABULARIES.get(self.namespace)
        if vocab is None:
            return None
        return vocab.get(self.name)


@dataclass(frozen=True)
class Check:
    """Elementary knowledge brick: lhs op rhs, passing or failing, no else.

    rhs is exactly one of: another attribute (ref), a scalar constant
    (value), or a value set (values, used by the contains_* operators and by
    eq-as-containment on list attributes).
    """

    lhs: AttributeRef
    op: str
    ref: AttributeRef | None = None
    value: object | None = None
    values: tuple | None = None

    def rhs_repr(self) -> str:
        if self.ref is not None:
            return str(self.ref)
        if self.values is not None:
            return "{" + ", ".join(str(v) for v in self.values) + "}"
        return repr(self.value)

    def __str__(self) -> str:
        return f"{self.lhs} {self.op} {self.rhs_repr()}"

    def canonical(self) -> tuple:
        return (str(self.lhs), self.op, str(self.ref) if self.ref else None,
                self.value, tuple(sorted(map(str, self.values))) if self.values else None)


@dataclass(frozen=True)
class GeometryFamily:
    id: str
    required_type: GeometryType
    checks: tuple[Check, ...] = ()


@dataclass(frozen=True)
class TMC:
    """Tool/Material Couple: materials, condition constraints, lubrication."""

    id: str
    cut_material: str
    cutting_material: str
    constraints: dict[str, Interval] = field(default_factory=dict)
    lubrication: str = "Dry"


@dataclass(frozen=True)
class ExtendedCuttingConditions:
    id: str
    mfg_type: MfgType
    mode: Mode
    allowed_tmcs: tuple[str, ...]
    priority: Priority = Priority.DEFAULT
    trajectory_strategy: TrajectoryStrategy | None = None


@dataclass(frozen=True)
class CuttingSetType:
    id: str
    diameter: Interval
    cutting_length: Interval
    tool_length: Interval
    end_radius: Interval
    cutting_material: str
    mfg_types: tuple[MfgType, ...]
    modes: tuple[Mode, ...]
    tmcs: tuple[str, ...]
    conditions: dict[str, Interval] = field(default_factory=dict)

    def scalar_interval(self, name: str) -> Interval:
        return getattr(self, name)


@dataclass(frozen=True)
class CuttingSet:
    """A concrete tool with its attachment: gauge scalars, capabilities and
    cutting-condition ranges."""

    id: str
    diameter: float
    cutting_length: float
    tool_length: float
    end_radius: float
    cutting_material: str
    mfg_types: tuple[MfgType, ...]
    modes: tuple[Mode, ...]
    tmcs: tuple[str, ...]
    conditions: dict[str, Interval] = field(default_factory=dict)


@dataclass(frozen=True)
class OSE:
    """A compatible (geometry family, cutting conditions, cutting-set type)
    triple plus the cross-namespace compliance checks."""

    id: str
    family: str
    config: str
    cutting_set_type: str
    compliance_checks: tuple[Check, ...]

    def structural_key(self) -> tuple:
        return (
            self.family,
            self.config,
            self.cutting_set_type,
            tuple(sorted(c.canonical() for c in self.compliance_checks)),
        )


@dataclass
class OSEDatabase:
    families: dict[str, GeometryFamily]
    configs: dict[str, ExtendedCuttingConditions]
    cutting_set_types: dict[str, CuttingSetType]
    tmcs: dict[str, TMC]
    oses: dict[str, OSE]


@dataclass(frozen=True)
class Finding:
    kind: str
    subject: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"[{self.kind}] {'/'.join(self.subject)}: {self.detail}"


# ---------------------------------------------------------------------------
# validation


def _check_findings(owner: str, check: Check, allowed_namespaces: set[str]) -> list[Finding]:
    out: list[Finding] = []
    kind = check.lhs.kind()
    if check.lhs.namespace not in _VOCABULARIES:
        out.append(Finding("ill-typed-check", (owner,), f"unknown namespace in {check}"))
        return out
    if kind is None:
        out.append(Finding("ill-typed-check", (owner,), f"unknown attribute {check.lhs}"))
        return out
    if check.lhs.namespace not in allowed_namespaces:
        out.append(
            Finding("ill-typed-check", (owner,), f"namespace {check.lhs.namespace} not allowed here")
        )
    if check.op not in ALL_OPS:
        out.append(Finding("ill-typed-check", (owner,), f"unknown operator {check.op!r}"))
        return out
    rhs_forms = sum(x is not None for x in (check.ref, check.value, check.values))
    if rhs_forms != 1:
        out.append(Finding("ill-typed-check", (owner,), f"check needs exactly one rhs form: {check}"))
        return out
    if check.op in SCALAR_OPS:
        if kind != "numeric":
            out.append(
                Finding("ill-typed-check", (owner,), f"scalar op on non-numeric lhs: {check}")
            )
        if check.ref is not None and check.ref.kind() != "numeric":
            out.append(
                Finding("ill-typed-check", (owner,), f"scalar op on non-numeric rhs: {check}")
            )
        if check.values is not None:
            out.append(Finding("ill-typed-check", (owner,), f"scalar op with value set: {check}"))
        if check.value is not None and not isinstance(check.value, (int, float)):
            out.append(Finding("ill-typed-check", (owner,), f"non-numeric constant: {check}"))
    elif check.op in CONTAINS_OPS:
        if kind != "list":
            out.append(
                Finding("ill-typed-check", (owner,), f"contains op needs list lhs: {check}")
            )
        if check.values is None:
            out.append(
                Finding("ill-typed-check", (owner,), f"contains op needs a value set: {check}")
            )
    return out


def validate_db(db: OSEDatabase) -> list[Finding]:
    """Structural findings: dangling references, inverted intervals,
    ill-typed checks, empty check lists. Empty report means valid."""
    findings: list[Finding] = []

    for tmc in db.tmcs.values():
        for param, interval in tmc.constraints.items():
            if param not in CONDITION_PARAMS:
                findings.append(Finding("unknown-parameter", (tmc.id,), f"constraint {param!r}"))
            if not interval.valid():
                findings.append(
                    Finding("inverted-interval", (tmc.id,), f"{param} [{interval.lo}, {interval.hi}]")
                )

    for cst in db.cutting_set_types.values():
        for name in TOOL_SCALARS:
            interval = cst.scalar_interval(name)
            if not interval.valid():
                findings.append(
                    Finding("inverted-interval", (cst.id,), f"{name} [{interval.lo}, {interval.hi}]")
                )
        for param, interval in cst.conditions.items():
            if param not in CONDITION_PARAMS:
                findings.append(Finding("unknown-parameter", (cst.id,), f"condition {param!r}"))
            elif not interval.valid():
                findings.append(
                    Finding("inverted-interval", (cst.id,), f"{param} [{interval.lo}, {interval.hi}]")
                )
        if not cst.mfg_types or not cst.modes or not cst.tmcs:
            findings.append(Finding("empty-capability", (cst.id,), "capability lists must be non-empty"))
        for tmc in cst.tmcs:
            if tmc not in db.tmcs:
                findings.append(Finding("dangling-reference", (cst.id,), f"TMC {tmc!r}"))

    for config in db.configs.values():
        if not config.allowed_tmcs:
            findings.append(Finding("empty-capability", (config.id,), "allowed_tmcs must be non-empty"))
        for tmc in config.allowed_tmcs:
            if tmc not in db.tmcs:
                findings.append(Finding("dangling-reference", (config.id,), f"TMC {tmc!r}"))

    for family in db.families.values():
        for check in family.checks:
            findings.extend(_check_findings(family.id, check, {"face"}))

    for ose in db.oses.values():
        if ose.family not in db.families:
            findings.append(Finding("dangling-reference", (ose.id,), f"family {ose.family!r}"))
        if ose.config not in db.configs:
            findings.append(Finding("dangling-reference", (ose.id,), f"config {ose.config!r}"))
        if ose.cutting_set_type not in db.cutting_set_types:
            findings.append(
                Finding("dangling-reference", (ose.id,), f"cutting set type {ose.cutting_set_type!r}")
            )
        if not ose.compliance_checks:
            findings.append(Finding("empty-checks", (ose.id,), "compliance checks must be non-empty"))
        for check in ose.compliance_checks:
            findings.extend(_check_findings(ose.id, check, {"face", "tool"}))

    return findings


# ---------------------------------------------------------------------------
# tool sorting


def classify_tool(tool: CuttingSet, db: OSEDatabase) -> list[str]:
    """Cutting-set types a tool belongs to; an empty list marks it unsorted.

    Membership needs every tool scalar inside the type's interval (inclusive
    bounds), equal cutting materials, and a non-empty intersection on each
    capability list.
    """
    members: list[str] = []
    for cst in db.cutting_set_types.values():
        if tool.cutting_material != cst.cutting_material:
            continue
        if not all(
            cst.scalar_interval(name).contains(getattr(tool, name)) for name in TOOL_SCALARS
        ):
            continue
        if not set(tool.mfg_types) & set(cst.mfg_types):
            continue
        if not set(tool.modes) & set(cst.modes):
            continue
        if not set(tool.tmcs) & set(cst.tmcs):
            continue
        members.append(cst.id)
    return members


# ---------------------------------------------------------------------------
# audit


def _categorical_domain(db: OSEDatabase, ref: AttributeRef) -> list:
    name = ref.name
    if name in ("geometry_type",):
        return [t.value for t in GeometryType]
    if name in ("openness",):
        return ["Open", "Closed"]
    if name in ("access_kinds",):
        return [["SingleVector"], ["TwoOppositeVectors"], ["NVectors"]]
    if name in ("access_compulsory",):
        return [True, False]
    if name in ("potential_mfg_types", "mfg_types"):
        return [[t.value] for t in MfgType]
    if name in ("modes",):
        return [[m.value] for m in Mode]
    if name in ("tmcs", "allowed_tmcs"):
        return [[t] for t in sorted(db.tmcs)]
    if name == "cutting_material":
        return sorted({cst.cutting_material for cst in db.cutting_set_types.values()})
    if name in ("mfg_type",):
        return [t.value for t in MfgType]
    if name in ("mode",):
        return [m.value for m in Mode]
    if name in ("priority",):
        return [p.value for p in Priority]
    if name in ("trajectory_strategy",):
        return [t.value for t in TrajectoryStrategy]
    return []


def _numeric_grid(db: OSEDatabase, checks_by_attr: dict[str, list[Check]]) -> dict[str, list[float]]:
    """Grid values per numeric attribute: interval endpoints and check
    constants, plus a midpoint per gap and one value beyond each end.

    Check semantics are piecewise constant between these breakpoints, so the
    grid decides threshold conjunctions exactly.
    """
    raw: dict[str, set[float]] = {}

    def put(attr: str, value: float) -> None:
        raw.setdefault(attr, set()).add(float(value))

    for cst in db.cutting_set_types.values():
        for name in TOOL_SCALARS:
            interval = cst.scalar_interval(name)
            put(f"tool.{name}", interval.lo)
            put(f"tool.{name}", interval.hi)
        for param, interval in cst.conditions.items():
            put(f"tool.{param}_min", interval.lo)
            put(f"tool.{param}_max", interval.hi)

    for attr, checks in checks_by_attr.items():
        for check in checks:
            if check.op not in SCALAR_OPS and check.op != "eq":
                continue
            if check.value is not None and isinstance(check.value, (int, float)):
                put(str(check.lhs), check.value)
                if check.ref is None and str(check.lhs) != attr:
                    put(attr, check.value)

    # Attribute-to-attribute comparisons share breakpoints on both sides.
    changed = True
    pairs = set()
    for checks in checks_by_attr.values():
        for check in checks:
            if check.ref is not None:
                pairs.add((str(check.lhs), str(check.ref)))
    while changed:
        changed = False
        for a, b in pairs:
            va = raw.setdefault(a, set())
            vb = raw.setdefault(b, set())
            union = va | vb
            if union != va or union != vb:
                raw[a] = set(union)
                raw[b] = set(union)
                changed = True

    grid: dict[str, list[float]] = {}
    for attr, values in raw.items():
        if not values:
            values = {0.0, 1.0}
        pts = sorted(values)
        expanded = [pts[0] - 1.0]
        for left, right in zip(pts, pts[1:]):
            expanded.append(left)
            if right > left:
                expanded.append(0.5 * (left + right))
        expanded.append(pts[-1])
        expanded.append(pts[-1] + 1.0)
        grid[attr] = sorted(set(expanded))
    return grid


def _eval_static(check: Check, assignment: dict[str, object]) -> bool:
    lhs = assignment[str(check.lhs)]
    if check.op in SCALAR_OPS:
        rhs = assignment[str(check.ref)] if check.ref is not None else check.value
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
        rhs = assignment[str(check.ref)] if check.ref is not None else check.value
        return lhs == rhs
    members = set(map(str, lhs)) if isinstance(lhs, list) else {str(lhs)}
    targets = set(map(str, check.values or ()))
    if check.op == "contains_any":
        return bool(members & targets)
    return targets <= members


def _attr_domains(db: OSEDatabase, attrs: list[str],
                  numeric_grid: dict[str, list[float]]) -> dict[str, list]:
    domains: dict[str, list] = {}
    for attr in attrs:
        ref = AttributeRef.parse(attr)
        if ref.kind() == "numeric":
            domains[attr] = list(numeric_grid.get(attr, [0.0, 1.0]))
        else:
            domains[attr] = _categorical_domain(db, ref)
    return domains


def _components(attr_set: set[str], checks: list[Check]) -> list[list[str]]:
    """Connected components of attributes coupled by attribute-to-attribute
    checks; acceptance factorizes over components."""
    parent = {a: a for a in attr_set}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: str, b: str) -> None:
        parent[find(a)] = find(b)

    for check in checks:
        if check.ref is not None:
            union(str(check.lhs), str(check.ref))
    groups: dict[str, list[str]] = {}
    for a in sorted(attr_set):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def _acceptance(checks: list[Check], component: list[str],
                domains: dict[str, list],
                extra_intervals: dict[str, Interval] | None = None) -> frozenset:
    """Accepted assignments of one attribute component, as hashable tuples."""
    relevant = [
        c for c in checks
        if str(c.lhs) in component or (c.ref is not None and str(c.ref) in component)
    ]
    accepted = []
    options = [domains[a] for a in component]
    for combo in itertools.product(*options):
        assignment = dict(zip(component, combo))
        if extra_intervals:
            ok = True
            for attr, interval in extra_intervals.items():
                if attr in assignment and not interval.contains(assignment[attr]):
                    ok = False
                    break
            if not ok:
                continue
        if all(_eval_static(c, assignment) for c in relevant):
            accepted.append(tuple(_freeze(assignment[a]) for a in component))
    return frozenset(accepted)


def _freeze(value: object) -> object:
    if isinstance(value, list):
        return tuple(sorted(map(str, value)))
    return value


@dataclass
class AuditReport:
    shadowing: list[Finding]
    unsatisfiable: list[Finding]
    duplicates: list[Finding]

    def all_findings(self) -> list[Finding]:
        return self.shadowing + self.unsatisfiable + self.duplicates

    def is_clean(self) -> bool:
        return not self.all_findings()


def audit_database(db: OSEDatabase) -> AuditReport:
    """Database health findings over the endpoint grid.

    shadowing: two OSEs with the same family and config whose compliance
    checks accept the identical non-empty region, so one can silently stand
    in for the other. unsatisfiable: an OSE accepting no point that also
    honors its cutting-set-type intervals. duplicates: structurally
    identical entries.
    """
    checks_by_attr: dict[str, list[Check]] = {}
    for ose in db.oses.values():
        for check in ose.compliance_checks:
            checks_by_attr.setdefault(str(check.lhs), []).append(check)
            if check.ref is not None:
                checks_by_attr.setdefault(str(check.ref), []).append(check)
    numeric_grid = _numeric_grid(db, checks_by_attr)

    shadowing: list[Finding] = []
    unsatisfiable: list[Finding] = []
    duplicates: list[Finding] = []

    by_key: dict[tuple, list[str]] = {}
    for ose_id in sorted(db.oses):
        by_key.setdefault(db.oses[ose_id].structural_key(), []).append(ose_id)
    for ids in by_key.values():
        if len(ids) > 1:
            duplicates.append(
                Finding("duplicate", tuple(ids), "structurally identical OSEs")
            )

    def check_attrs(ose: OSE) -> set[str]:
        attrs: set[str] = set()
        for check in ose.compliance_checks:
            attrs.add(str(check.lhs))
            if check.ref is not None:
                attrs.add(str(check.ref))
        return attrs

    # Unsatisfiability: acceptance under the OSE's own type intervals.
    for ose_id in sorted(db.oses):
        ose = db.oses[ose_id]
        cst = db.cutting_set_types.get(ose.cutting_set_type)
        if cst is None:
            continue
        intervals = {f"tool.{name}": cst.scalar_interval(name) for name in TOOL_SCALARS}
        attrs = check_attrs(ose) | set(intervals)
        domains = _attr_domains(db, sorted(attrs), numeric_grid)
        checks = list(ose.compliance_checks)
        empty = False
        for component in _components(attrs, checks):
            extra = {a: intervals[a] for a in component if a in intervals}
            if not _acceptance(checks, component, domains, extra):
                empty = True
                break
        if empty:
            unsatisfiable.append(
                Finding("unsatisfiable", (ose_id,),
                        "no grid point satisfies checks within the type intervals")
            )

    # Shadowing among same (family, config) pairs.
    grouped: dict[tuple[str, str], list[str]] = {}
    for ose_id in sorted(db.oses):
        ose = db.oses[ose_id]
        grouped.setdefault((ose.family, ose.config), []).append(ose_id)
    for (family, config), ids in grouped.items():
        for a_id, b_id in itertools.combinations(ids, 2):
            a, b = db.oses[a_id], db.oses[b_id]
            attrs = check_attrs(a) | check_attrs(b)
            if not attrs:
                continue
            domains = _attr_domains(db, sorted(attrs), numeric_grid)
            components = _components(attrs, list(a.compliance_checks) + list(b.compliance_checks))
            identical = True
            non_empty = True
            for component in components:
                acc_a = _acceptance(list(a.compliance_checks), component, domains)
                acc_b = _acceptance(list(b.compliance_checks), component, domains)
                if acc_a != acc_b:
                    identical = False
                    break
                if not acc_a:
                    non_empty = False
            if identical and non_empty:
                shadowing.append(
                    Finding("shadowing", (a_id, b_id),
                            f"identical acceptance for family {family!r} and config {config!r}")
                )

    return AuditReport(shadowing=shadowing, unsatisfiable=unsatisfiable, duplicates=duplicates)


# ---------------------------------------------------------------------------
# what-if analysis


@dataclass(frozen=True)
class WhatIfVariant:
    field: str
    value: str
    descriptor: tuple[tuple[str, str], ...]
    covered: bool


def what_if_expand(ose: OSE, db: OSEDatabase,
                   vary: tuple[str, ...] = ("mfg_type", "mode", "tmc")) -> list[WhatIfVariant]:
    """Single-field substitutions of the OSE's configuration.

    For each varied field, every other vocabulary value yields a variant;
    covered means another OSE of the same family already handles that
    configuration (same manufacturing type and mode, overlapping TMCs). The
    original configuration is never returned.
    """
    if ose.id not in db.oses:
        raise KeyError(f"OSE {ose.id!r} not in database")
    config = db.configs[ose.config]
    variants: list[WhatIfVariant] = []

    siblings = [
        db.configs[other.config]
        for other in db.oses.values()
        if other.id != ose.id and other.family == ose.family
    ]

    def covered(mfg_type: MfgType, mode: Mode, tmcs: tuple[str, ...]) -> bool:
        return any(
            sib.mfg_type == mfg_type
            and sib.mode == mode
            and set(sib.allowed_tmcs) & set(tmcs)
            for sib in siblings
        )

    def descriptor(mfg_type: MfgType, mode: Mode, tmcs: tuple[str, ...]) -> tuple:
        return (
            ("mfg_type", mfg_type.value),
            ("mode", mode.value),
            ("tmcs", ",".join(sorted(tmcs))),
        )

    if "mfg_type" in vary:
        for mfg_type in MfgType:
            if mfg_type == config.mfg_type:
                continue
            variants.append(
                WhatIfVariant(
                    field="mfg_type",
                    value=mfg_type.value,
                    descriptor=descriptor(mfg_type, config.mode, config.allowed_tmcs),
                    covered=covered(mfg_type, config.mode, config.allowed_tmcs),
                )
            )
    if "mode" in vary:
        for mode in Mode:
            if mode == config.mode:
                continue
            variants.append(
                WhatIfVariant(
                    field="mode",
                    value=mode.value,
                    descriptor=descriptor(config.mfg_type, mode, config.allowed_tmcs),
                    covered=covered(config.mfg_type, mode, config.allowed_tmcs),
                )
            )
    if "tmc" in vary:
        for tmc_id in sorted(db.tmcs):
            if set((tmc_id,)) == set(config.allowed_tmcs):
                continue
            variants.append(
                WhatIfVariant(
                    field="tmc",
                    value=tmc_id,
                    descriptor=descriptor(config.mfg_type, config.mode, (tmc_id,)),
                    covered=covered(config.mfg_type, config.mode, (tmc_id,)),
                )
            )
    return variants
