"""Transformation phase: face classification and manufacturability attributes.

Each face is classified into exactly one geometry type, tested in strict
precedence order (Plan, Cylinder, ConeShaped, Ruled, ConstRadiusSweep); the
first fit within tolerance wins and Unspecified is the fallback. On top of
the type, the phase computes edge/face openness, admissible access
directions, accessibility dimensions, the minimum concave fillet radius and
the potential manufacturing types every downstream stage consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import fitting, kernels
from .part_model import Box3, Part, Point3, SampledFace, bounding_box

__all__ = [
    "GeometryType",
    "MfgType",
    "Openness",
    "AccessKind",
    "AccessDirection",
    "DirectionDims",
    "FaceAttributes",
    "Tolerances",
    "TransformResult",
    "classify_face",
    "compute_openness",
    "compute_access_directions",
    "compute_access_dimensions",
    "deduce_mfg_types",
    "transform_part",
]

UNBOUNDED = math.inf


class GeometryType(str, Enum):
    PLAN = "Plan"
    CYLINDER = "Cylinder"
    CONE_SHAPED = "ConeShaped"
    RULED = "Ruled"
    CONST_RADIUS_SWEEP = "ConstRadiusSweep"
    UNSPECIFIED = "Unspecified"


#: Precedence order of the classification tests (most restrictive first).
TYPE_ORDER = [
    GeometryType.PLAN,
    GeometryType.CYLINDER,
    GeometryType.CONE_SHAPED,
    GeometryType.RULED,
    GeometryType.CONST_RADIUS_SWEEP,
    GeometryType.UNSPECIFIED,
]


class MfgType(str, Enum):
    END = "EndManufacturing"
    FLANK = "FlankManufacturing"
    SWEEPING = "Sweeping"
    DRILLING = "Drilling"


class Openness(str, Enum):
    OPEN = "Open"
    CLOSED = "Closed"


class AccessKind(str, Enum):
    SINGLE = "SingleVector"
    TWO_OPPOSITE = "TwoOppositeVectors"
    N_VECTORS = "NVectors"


@dataclass(frozen=True)
class AccessDirection:
    direction: tuple[float, float, float]
    kind: AccessKind
    compulsory: bool


@dataclass(frozen=True)
class DirectionDims:
    """Accessibility dimensions along one admissible direction."""

    direction: tuple[float, float, float]
    end_accessibility: float
    flank_accessibility: float
    global_accessibility: float


@dataclass
class FaceAttributes:
    face: str
    geometry_type: GeometryType
    fit_residual: float
    openness: Openness
    edge_openness: list[tuple[str, Openness]]
    access: list[AccessDirection]
    end_accessibility: float
    flank_accessibility: float
    global_accessibility: float
    min_fillet_radius: float  # UNBOUNDED when the face has no concavity
    dimension_box: Box3
    potential_mfg_types: list[MfgType]
    per_direction: list[DirectionDims] = field(default_factory=list)
    primary_direction: tuple[float, float, float] | None = None
    inaccessible: bool = False
    # Derived geometry carried for setup planning and rule evaluation.
    mean_normal: tuple[float, float, float] | None = None
    axis_direction: tuple[float, float, float] | None = None
    ruling_direction: tuple[float, float, float] | None = None
    radius: float | None = None

    @property
    def access_kinds(self) -> list[str]:
        return sorted({a.kind.value for a in self.access})

    @property
    def access_compulsory(self) -> bool:
        return any(a.compulsory for a in self.access)


@dataclass(frozen=True)
class Tolerances:
    """Classification and accessibility tolerances (millimetre scale)."""

    plane_residual: float = 1e-3
    cylinder_residual: float = 1e-3
    cone_residual: float = 1e-3
    ruled_deviation: float = 1e-3
    sweep_spread: float = 1e-2
    normal_cone_eps: float = 1e-3
    occlusion_clearance: float = 0.5
    angular_eps: float = 0.02  # radians, for direction alignment tests
    ring_samples: int = 16
    ring_min_continuum: int = 3
    max_rays_per_face: int = 64
    curvature_eps: float = 1e-6

    @staticmethod
    def from_dict(data: dict) -> "Tolerances":
        return replace(Tolerances(), **data)


@dataclass
class TransformResult:
    part: str
    attributes: list[FaceAttributes]
    counts: dict[GeometryType, int]
    inaccessible: list[str]

    def by_face(self) -> dict[str, FaceAttributes]:
        return {a.face: a for a in self.attributes}


# ---------------------------------------------------------------------------
# classification


def classify_face(face: SampledFace,
                  tolerances: Tolerances | None = None) -> tuple[GeometryType, float, dict]:
    """Classify one face; returns (type, fit residual, fit details).

    Tests run in precedence order and the first residual within its
    tolerance wins, so a plane is never labeled Ruled even though it passes
    the ruled test. Unspecified is the total-function fallback, never an
    error.
    """
    tol = tolerances or Tolerances()
    grid = face.grid
    details: dict = {}

    try:
        plane = fitting.fit_plane(grid)
        details["plane"] = plane
        if plane.residual <= tol.plane_residual:
            return GeometryType.PLAN, plane.residual, details
    except fitting.FitError:
        pass

    if grid.shape[0] >= 3 and grid.shape[1] >= 3:
        try:
            cyl = fitting.fit_cylinder(grid)
            details["cylinder"] = cyl
            if cyl.residual <= tol.cylinder_residual:
                return GeometryType.CYLINDER, cyl.residual, details
        except fitting.FitError:
            pass
        try:
            cone = fitting.fit_cone(grid)
            details["cone"] = cone
            if cone.residual <= tol.cone_residual:
                return GeometryType.CONE_SHAPED, cone.residual, details
        except fitting.FitError:
            pass

    deviation, family_axis = fitting.ruled_deviation(grid)
    details["ruled"] = (deviation, family_axis)
    if deviation <= tol.ruled_deviation:
        return GeometryType.RULED, deviation, details

    if grid.shape[0] >= 3 and grid.shape[1] >= 3:
        try:
            sweep = fitting.fit_constant_radius_sweep(grid)
            details["sweep"] = sweep
            if sweep.spread <= tol.sweep_spread:
                return GeometryType.CONST_RADIUS_SWEEP, sweep.spread, details
        except fitting.FitError:
            pass

    plane_res = details["plane"].residual if "plane" in details else UNBOUNDED
    return GeometryType.UNSPECIFIED, plane_res, details


# ---------------------------------------------------------------------------
# openness


def compute_openness(face: SampledFace) -> tuple[Openness, list[tuple[str, Openness]]]:
    """Edge and aggregate openness from adjacency material angles.

    An edge is Open when it borders strictly less than 180 degrees of
    material; 180 ties go to Closed. A face with no adjacency is Open, and
    the aggregate is Open only when every adjacent edge is Open.
    """
    edges: list[tuple[str, Openness]] = []
    for adj in face.adjacency:
        state = Openness.OPEN if adj.material_angle < 180.0 else Openness.CLOSED
        edges.append((adj.face, state))
    aggregate = (
        Openness.OPEN
        if all(state is Openness.OPEN for _, state in edges)
        else Openness.CLOSED
    )
    return aggregate, edges


# ---------------------------------------------------------------------------
# access directions


def _unit(v: np.ndarray) -> np.ndarray | None:
    n = np.linalg.norm(v)
    if n < 1e-9:
        return None
    return v / n


def _direction_key(d: np.ndarray) -> tuple[float, float, float]:
    return (round(float(d[0]), 9), round(float(d[1]), 9), round(float(d[2]), 9))


def _inset_samples(face: SampledFace, cap: int) -> np.ndarray:
    """Interior ray origins: border samples sit on neighbor faces, so rays
    cast from them would graze adjacent geometry."""
    g = face.grid
    rows, cols = g.shape[0], g.shape[1]
    core = g[1:-1, 1:-1].reshape(-1, 3) if rows >= 3 and cols >= 3 else None
    if core is None or core.size == 0:
        core = g.reshape(-1, 3).mean(axis=0, keepdims=True)
    if core.shape[0] > cap:
        stride = int(np.ceil(core.shape[0] / cap))
        core = core[::stride]
    return core


def _face_boxes(part: Part) -> dict[str, np.ndarray]:
    boxes = {}
    for f in part.faces:
        pts = f.points()
        boxes[f.id] = np.concatenate([pts.min(axis=0), pts.max(axis=0)])
    return boxes


class _FaceGeometry:
    """Per-face derived geometry shared by the access computations."""

    def __init__(self, face: SampledFace, geometry_type: GeometryType, details: dict):
        self.face = face
        self.type = geometry_type
        self.normals = kernels.grid_normals(face.grid)
        mean = self.normals.reshape(-1, 3).mean(axis=0)
        self.mean_normal = _unit(mean)
        self.axis: np.ndarray | None = None
        self.ruling: np.ndarray | None = None
        self.radius: float | None = None
        if geometry_type is GeometryType.CYLINDER and "cylinder" in details:
            self.axis = details["cylinder"].axis_direction
            self.ruling = self.axis
            self.radius = details["cylinder"].radius
        elif geometry_type is GeometryType.CONE_SHAPED and "cone" in details:
            self.axis = details["cone"].axis_direction
        elif geometry_type is GeometryType.RULED and "ruled" in details:
            _, family_axis = details["ruled"]
            g = face.grid
            if family_axis == 0:
                # Rows are rulings: each ruling runs along the column index.
                chord = g[:, -1, :] - g[:, 0, :]
            else:
                chord = g[-1, :, :] - g[0, :, :]
            self.ruling = _unit(chord.mean(axis=0))
        elif geometry_type is GeometryType.CONST_RADIUS_SWEEP and "sweep" in details:
            self.radius = details["sweep"].radius

    def passes_normal_cone(self, d: np.ndarray, eps: float) -> bool:
        dots = self.normals.reshape(-1, 3) @ d
        return bool(dots.min() >= -eps)


def compute_access_directions(face: SampledFace, part: Part,
                              geometry: _FaceGeometry,
                              boxes: dict[str, np.ndarray],
                              tol: Tolerances) -> list[AccessDirection]:
    """Admissible tool approach directions for one face.

    A candidate passes when every sample normal satisfies the normal-cone
    test and no ray cast from the interior samples crosses another face's
    bounding box beyond the clearance. Cylinder/cone faces additionally get
    a sampled ring of directions orthogonal to the axis; a contiguous run of
    passing ring directions is reported as an NVectors continuum.
    """
    other_boxes = np.array(
        [boxes[f.id] for f in part.faces if f.id != face.id], dtype=float
    ).reshape(-1, 6)
    origins = _inset_samples(face, tol.max_rays_per_face)

    def admissible(d: np.ndarray) -> bool:
        if not geometry.passes_normal_cone(d, tol.normal_cone_eps):
            return False
        return not kernels.occlusion_blocked(
            origins, d, other_boxes, tol.occlusion_clearance
        )

    candidates: list[np.ndarray] = []

    def add(v: np.ndarray | None) -> None:
        if v is None:
            return
        for existing in candidates:
            if np.linalg.norm(existing - v) < 1e-6:
                return
        candidates.append(v)

    add(geometry.mean_normal)
    if geometry.mean_normal is not None:
        add(-geometry.mean_normal)
    if geometry.axis is not None:
        add(geometry.axis)
        add(-geometry.axis)
    if geometry.ruling is not None:
        add(geometry.ruling)
        add(-geometry.ruling)

    ring: list[np.ndarray] = []
    ring_pass: list[bool] = []
    if geometry.axis is not None and geometry.type in (
        GeometryType.CYLINDER,
        GeometryType.CONE_SHAPED,
    ):
        axis = geometry.axis
        seed = geometry.mean_normal
        if seed is None or abs(float(seed @ axis)) > 0.99:
            seed = np.array([1.0, 0.0, 0.0])
        e1 = _unit(seed - (seed @ axis) * axis)
        if e1 is None:
            e1 = _unit(np.cross(axis, [0.0, 0.0, 1.0]))
        if e1 is None:
            e1 = np.array([1.0, 0.0, 0.0])
        e2 = np.cross(axis, e1)
        for k in range(tol.ring_samples):
            ang = 2.0 * np.pi * k / tol.ring_samples
            ring.append(np.cos(ang) * e1 + np.sin(ang) * e2)
        ring_pass = [admissible(d) for d in ring]

    admissible_dirs: list[np.ndarray] = []
    for d in candidates:
        if admissible(d):
            admissible_dirs.append(d)
    ring_dirs: list[np.ndarray] = [d for d, ok in zip(ring, ring_pass) if ok]

    # A continuum exists when enough ring directions pass contiguously.
    continuum = False
    if ring_pass:
        n = len(ring_pass)
        passing = sum(ring_pass)
        if passing >= tol.ring_min_continuum:
            best_run = 0
            run = 0
            for flag in ring_pass + ring_pass:  # wraparound
                run = run + 1 if flag else 0
                best_run = max(best_run, run)
            continuum = best_run >= tol.ring_min_continuum

    all_dirs: list[np.ndarray] = []
    for d in admissible_dirs + (ring_dirs if continuum else []):
        if not any(np.linalg.norm(d - e) < 1e-6 for e in all_dirs):
            all_dirs.append(d)

    compulsory = len(all_dirs) == 1
    result: list[AccessDirection] = []
    for d in all_dirs:
        in_ring = continuum and any(np.linalg.norm(d - r) < 1e-6 for r in ring_dirs)
        if in_ring:
            kind = AccessKind.N_VECTORS
        elif any(np.linalg.norm(d + e) < 1e-6 for e in all_dirs):
            kind = AccessKind.TWO_OPPOSITE
        else:
            kind = AccessKind.SINGLE
        result.append(
            AccessDirection(direction=_direction_key(d), kind=kind, compulsory=compulsory)
        )
    return result


# ---------------------------------------------------------------------------
# access dimensions


def _min_area_rectangle(points2d: np.ndarray) -> tuple[float, float]:
    """Side lengths (small, large) of the minimal-area bounding rectangle."""
    pts = np.unique(np.round(points2d, 12), axis=0)
    if pts.shape[0] == 1:
        return 0.0, 0.0
    try:
        hull = ConvexHull(pts)
        hull_pts = pts[hull.vertices]
    except QhullError:
        # Collinear projections: extent along the principal direction only.
        centered = pts - pts.mean(axis=0)
        _, _, vt = np.linalg.svd(centered, full_matrices=False)
        spans = centered @ vt[0]
        return 0.0, float(spans.max() - spans.min())
    edges = np.diff(np.vstack([hull_pts, hull_pts[:1]]), axis=0)
    angles = np.unique(np.mod(np.arctan2(edges[:, 1], edges[:, 0]), np.pi / 2))
    best = (np.inf, 0.0, 0.0)
    for ang in angles:
        rot = np.array([[np.cos(ang), np.sin(ang)], [-np.sin(ang), np.cos(ang)]])
        rotated = hull_pts @ rot.T
        w = rotated[:, 0].max() - rotated[:, 0].min()
        h = rotated[:, 1].max() - rotated[:, 1].min()
        area = w * h
        if area < best[0]:
            best = (area, w, h)
    _, w, h = best
    return (min(w, h), max(w, h))


def compute_access_dimensions(face: SampledFace, part: Part,
                              direction: tuple[float, float, float],
                              part_box: Box3) -> DirectionDims:
    """End/flank/global accessibility of the face along one direction.

    End and flank are the small and large sides of the minimal projected
    rectangle orthogonal to the direction; global is the depth of the face
    below the part's entry plane along the direction.
    """
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    pts = face.points()
    ref = np.array([0.0, 0.0, 1.0]) if abs(d[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(d, ref)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(d, e1)
    projected = np.stack([pts @ e1, pts @ e2], axis=1)
    end, flank = _min_area_rectangle(projected)

    corners = part_box.as_array()
    corner_pts = np.array([
        [corners[i], corners[j + 1], corners[k + 2]]
        for i in (0, 3) for j in (0, 3) for k in (0, 3)
    ])
    entry = float((corner_pts @ d).max())
    nearest = float((pts @ d).max())
    global_acc = max(0.0, entry - nearest)
    return DirectionDims(
        direction=_direction_key(d),
        end_accessibility=end,
        flank_accessibility=flank,
        global_accessibility=global_acc,
    )


def _min_fillet_radius(face: SampledFace, normals: np.ndarray, tol: Tolerances) -> float:
    kappa = kernels.max_concave_curvature(face.grid, normals, tol.curvature_eps)
    if kappa <= tol.curvature_eps:
        return UNBOUNDED
    return 1.0 / kappa


# ---------------------------------------------------------------------------
# manufacturing types


def _within_angle(a: np.ndarray, b: np.ndarray, eps: float) -> bool:
    dot = float(np.clip(a @ b, -1.0, 1.0))
    return math.acos(dot) <= eps


def deduce_mfg_types(geometry_type: GeometryType,
                     access: list[AccessDirection],
                     aggregate_openness: Openness,
                     mean_normal: tuple[float, float, float] | None,
                     axis: tuple[float, float, float] | None,
                     ruling: tuple[float, float, float] | None,
                     tol: Tolerances) -> list[MfgType]:
    """Potential manufacturing types deduced from the accessibility results.

    Rules: access along a face normal enables end manufacturing; a ruling or
    axis among the access directions enables flank manufacturing; Unspecified
    and constant-radius-sweep faces are swept; a closed cylinder whose axis
    is an access direction can additionally be drilled. Sweeping is the
    fallback so the set is never empty while access exists.
    """
    if not access:
        return []
    dirs = [np.asarray(a.direction, dtype=float) for a in access]
    types: set[MfgType] = set()

    if mean_normal is not None:
        n = np.asarray(mean_normal, dtype=float)
        if any(_within_angle(d, n, tol.angular_eps) for d in dirs):
            types.add(MfgType.END)

    if geometry_type in (GeometryType.RULED, GeometryType.CYLINDER, GeometryType.CONE_SHAPED):
        for reference in (axis, ruling):
            if reference is None:
                continue
            r = np.asarray(reference, dtype=float)
            if any(
                _within_angle(d, r, tol.angular_eps) or _within_angle(d, -r, tol.angular_eps)
                for d in dirs
            ):
                types.add(MfgType.FLANK)
                break

    if geometry_type in (GeometryType.UNSPECIFIED, GeometryType.CONST_RADIUS_SWEEP):
        types.add(MfgType.SWEEPING)

    if (
        geometry_type is GeometryType.CYLINDER
        and aggregate_openness is Openness.CLOSED
        and axis is not None
    ):
        a = np.asarray(axis, dtype=float)
        if any(
            _within_angle(d, a, tol.angular_eps) or _within_angle(d, -a, tol.angular_eps)
            for d in dirs
        ):
            types.add(MfgType.DRILLING)

    if not types:
        types.add(MfgType.SWEEPING)
    order = [MfgType.END, MfgType.FLANK, MfgType.SWEEPING, MfgType.DRILLING]
    return [t for t in order if t in types]


# ---------------------------------------------------------------------------
# whole-part transformation


def transform_part(part: Part, tolerances: Tolerances | None = None) -> TransformResult:
    """Run the full face analysis over a validated part.

    Inaccessible faces (empty admissible set) keep their classification and
    are listed separately; scalar accessibility fields come from the
    admissible direction with the smallest depth, with per-direction values
    retained for setup planning.
    """
    tol = tolerances or Tolerances()
    boxes = _face_boxes(part)
    part_box = bounding_box(part)
    attributes: list[FaceAttributes] = []
    inaccessible: list[str] = []
    counts: dict[GeometryType, int] = {t: 0 for t in TYPE_ORDER}

    for face in part.faces:
        geometry_type, residual, details = classify_face(face, tol)
        counts[geometry_type] += 1
        geometry = _FaceGeometry(face, geometry_type, details)
        aggregate, edges = compute_openness(face)
        access = compute_access_directions(face, part, geometry, boxes, tol)
        fillet = _min_fillet_radius(face, geometry.normals, tol)
        face_box = bounding_box(face)

        per_direction = [
            compute_access_dimensions(face, part, a.direction, part_box) for a in access
        ]
        primary: tuple[float, float, float] | None = None
        if per_direction:
            chosen = min(
                per_direction,
                key=lambda dd: (dd.global_accessibility, dd.direction),
            )
            end, flank, global_acc = (
                chosen.end_accessibility,
                chosen.flank_accessibility,
                chosen.global_accessibility,
            )
            primary = chosen.direction
        else:
            end = flank = global_acc = 0.0
            inaccessible.append(face.id)

        mfg = deduce_mfg_types(
            geometry_type,
            access,
            aggregate,
            tuple(geometry.mean_normal) if geometry.mean_normal is not None else None,
            tuple(geometry.axis) if geometry.axis is not None else None,
            tuple(geometry.ruling) if geometry.ruling is not None else None,
            tol,
        )

        attributes.append(
            FaceAttributes(
                face=face.id,
                geometry_type=geometry_type,
                fit_residual=residual,
                openness=aggregate,
                edge_openness=edges,
                access=access,
                end_accessibility=end,
                flank_accessibility=flank,
                global_accessibility=global_acc,
                min_fillet_radius=fillet,
                dimension_box=face_box,
                potential_mfg_types=mfg,
                per_direction=per_direction,
                primary_direction=primary,
                inaccessible=not access,
                mean_normal=(
                    _direction_key(geometry.mean_normal)
                    if geometry.mean_normal is not None
                    else None
                ),
                axis_direction=(
                    _direction_key(geometry.axis) if geometry.axis is not None else None
                ),
                ruling_direction=(
                    _direction_key(geometry.ruling) if geometry.ruling is not None else None
                ),
                radius=geometry.radius,
            )
        )

    return TransformResult(
        part=part.id,
        attributes=attributes,
        counts=counts,
        inaccessible=inaccessible,
    )
