"""Domain types for parts given as sampled faces, plus validation and box queries.

A part is a set of faces, each sampled on a rectangular u x v grid of 3D
points (millimetres). Adjacency between faces carries the material angle of
the shared edge in degrees. Grids must be oriented so that the cross product
of the row direction and the column direction points away from the material
(outward normals); every downstream accessibility computation relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Point3",
    "Box3",
    "Adjacency",
    "SampledFace",
    "Part",
    "Violation",
    "validate_part",
    "bounding_box",
]


@dataclass(frozen=True)
class Point3:
    """A point in part coordinates, millimetres."""

    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class Box3:
    """Axis-aligned box; min_corner <= max_corner componentwise."""

    min_corner: Point3
    max_corner: Point3

    def contains_box(self, other: "Box3", tol: float = 1e-9) -> bool:
        a, b = self.min_corner, self.max_corner
        c, d = other.min_corner, other.max_corner
        return (
            a.x <= c.x + tol and a.y <= c.y + tol and a.z <= c.z + tol
            and b.x >= d.x - tol and b.y >= d.y - tol and b.z >= d.z - tol
        )

    def extent(self) -> np.ndarray:
        return self.max_corner.as_array() - self.min_corner.as_array()

    def as_array(self) -> np.ndarray:
        """Flat [xmin, ymin, zmin, xmax, ymax, zmax]."""
        return np.concatenate([self.min_corner.as_array(), self.max_corner.as_array()])


@dataclass(frozen=True)
class Adjacency:
    """Edge to a neighboring face. material_angle in degrees, open interval (0, 360)."""

    face: str
    material_angle: float


@dataclass(eq=False)
class SampledFace:
    """One face sampled on a rows x cols grid (both >= 2).

    grid has shape (rows, cols, 3). Row x column tangent cross products must
    point out of the material.
    """

    id: str
    grid: np.ndarray
    adjacency: list[Adjacency] = field(default_factory=list)
    label: str | None = None

    def __post_init__(self) -> None:
        self.grid = np.asarray(self.grid, dtype=float)

    @property
    def rows(self) -> int:
        return self.grid.shape[0]

    @property
    def cols(self) -> int:
        return self.grid.shape[1]

    def points(self) -> np.ndarray:
        """All samples as an (N, 3) array."""
        return self.grid.reshape(-1, 3)


@dataclass(eq=False)
class Part:
    """A part: unique face ids, at least one face, millimetre units."""

    id: str
    faces: list[SampledFace]
    units: str = "mm"

    def face(self, face_id: str) -> SampledFace:
        for f in self.faces:
            if f.id == face_id:
                return f
        raise KeyError(face_id)

    def face_ids(self) -> list[str]:
        return [f.id for f in self.faces]


@dataclass(frozen=True)
class Violation:
    """One invariant violation; violations are data, not exceptions."""

    face: str | None
    reason: str

    def __str__(self) -> str:
        where = self.face if self.face is not None else "<part>"
        return f"{where}: {self.reason}"


def validate_part(part: Part) -> list[Violation]:
    """Check every part invariant; an empty report means the part is valid.

    Reported violations: missing faces, duplicate face ids, bad units,
    non-rectangular or undersized grids, non-finite coordinates, dangling or
    asymmetric adjacency, and material angles outside (0, 360).
    """
    violations: list[Violation] = []
    if not part.faces:
        violations.append(Violation(None, "part has no faces"))
        return violations
    if part.units != "mm":
        violations.append(Violation(None, f"units must be 'mm', got {part.units!r}"))

    seen: set[str] = set()
    for f in part.faces:
        if f.id in seen:
            violations.append(Violation(f.id, "duplicate face id"))
        seen.add(f.id)

    ids = {f.id for f in part.faces}
    for f in part.faces:
        g = f.grid
        if g.ndim != 3 or g.shape[2] != 3:
            violations.append(Violation(f.id, "grid is not a rows x cols x 3 array"))
            continue
        if g.shape[0] < 2 or g.shape[1] < 2:
            violations.append(Violation(f.id, "grid must be at least 2 x 2"))
        if not np.isfinite(g).all():
            violations.append(Violation(f.id, "non-finite coordinate in grid"))
        for adj in f.adjacency:
            if adj.face not in ids:
                violations.append(
                    Violation(f.id, f"adjacency references unknown face {adj.face!r}")
                )
            elif not any(back.face == f.id for back in part.face(adj.face).adjacency):
                violations.append(
                    Violation(f.id, f"asymmetric adjacency: {adj.face!r} does not list {f.id!r}")
                )
            if not (0.0 < adj.material_angle < 360.0):
                violations.append(
                    Violation(
                        f.id,
                        f"material angle {adj.material_angle} outside (0, 360)",
                    )
                )
    return violations


def bounding_box(geometry: Part | SampledFace) -> Box3:
    """Smallest axis-aligned box containing every sample point."""
    if isinstance(geometry, Part):
        pts = np.concatenate([f.points() for f in geometry.faces], axis=0)
    else:
        pts = geometry.points()
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    return Box3(Point3(*lo), Point3(*hi))
