"""Shipped fixtures: demonstration parts, the seed OSE database and tool set.

Every part is generated procedurally so the shipped JSON files are exactly
reproducible (python -m oseplan.fixtures rewrites them). Grids follow the
input contract that row x column tangents point out of the material.

The main demonstration part is a 24-face machined housing: a pocket with
bowed (ruled) walls and a bottom fillet, a blind bore, a conical spout
overhanging one corner and a free-form bump on the top. Wall cross sections
are gentle S-curves, which keeps their rulings straight and vertical while
defeating the plane, cylinder and cone fits.
"""

from __future__ import annotations

import numpy as np

from .ose_db import (
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
from .transform import GeometryType, MfgType

__all__ = [
    "six_type_part",
    "housing_part",
    "web_part",
    "pocket_depth_part",
    "overhang_part",
    "fillet_blend_part",
    "scale_part",
    "seed_database",
    "seed_tools",
    "audit_defect_database",
    "whatif_covered_database",
    "write_all",
]

_WALL_S = 8e-5  # cubic bow coefficient of pocket walls


def _grid(u: np.ndarray, v: np.ndarray, mapper) -> np.ndarray:
    U, V = np.meshgrid(u, v, indexing="ij")
    x, y, z = mapper(U, V)
    return np.stack([np.broadcast_to(x, U.shape),
                     np.broadcast_to(y, U.shape),
                     np.broadcast_to(z, U.shape)], axis=-1).astype(float)


def _rect_z(x0, x1, y0, y1, z, nu=6, nv=6):
    """Horizontal rectangle with +z normal (u along x, v along y)."""
    return _grid(np.linspace(x0, x1, nu), np.linspace(y0, y1, nv),
                 lambda U, V: (U, V, np.full_like(U, z)))


def _rect_z_down(x0, x1, y0, y1, z, nu=6, nv=6):
    """Horizontal rectangle with -z normal (u along y, v along x)."""
    return _grid(np.linspace(y0, y1, nu), np.linspace(x0, x1, nv),
                 lambda U, V: (V, U, np.full_like(U, z)))


def _adjacency(pairs: dict[str, list[tuple[str, float]]], face_id: str) -> list[Adjacency]:
    return [Adjacency(face=o, material_angle=a) for o, a in pairs.get(face_id, [])]


def _symmetrize(pairs: list[tuple[str, str, float]]) -> dict[str, list[tuple[str, float]]]:
    table: dict[str, list[tuple[str, float]]] = {}
    for a, b, angle in pairs:
        table.setdefault(a, []).append((b, angle))
        table.setdefault(b, []).append((a, angle))
    return table


# ---------------------------------------------------------------------------
# standalone classification fixtures


def plane_patch(n=8, size=20.0) -> np.ndarray:
    return _rect_z(0, size, 0, size, 0.0, n, n)


def cylinder_patch(radius=5.0, arc=2.0 * np.pi / 3.0, height=20.0, n=12,
                   inward=False) -> np.ndarray:
    th = np.linspace(-arc / 2, arc / 2, n)
    z = np.linspace(0.0, height, n)
    if inward:
        # u along z, v along theta: normals toward the axis.
        return _grid(z, th, lambda U, V: (radius * np.cos(V), radius * np.sin(V), U))
    return _grid(th, z, lambda U, V: (radius * np.cos(U), radius * np.sin(U), V))


def cone_patch(half_angle_deg=20.0, t0=5.0, t1=20.0, arc=1.7, n=12) -> np.ndarray:
    gamma = np.radians(half_angle_deg)
    t = np.linspace(t0, t1, n)
    th = np.linspace(0.3, 0.3 + arc, n)
    # Apex at origin, axis -z (cone opens downward), normals outward.
    return _grid(th, t, lambda U, V: (
        V * np.tan(gamma) * np.cos(U),
        V * np.tan(gamma) * np.sin(U),
        -V,
    ))


def hypar_patch(size=5.0, warp=0.1, n=12) -> np.ndarray:
    s = np.linspace(-size, size, n)
    return _grid(s, s, lambda U, V: (U, V, warp * U * V))


def torus_patch(spine_radius=10.0, tube_radius=3.0, n=14) -> np.ndarray:
    th = np.linspace(0.1, np.pi / 2, n)
    ph = np.linspace(np.pi, 1.5 * np.pi, n)
    return _grid(th, ph, lambda U, V: (
        (spine_radius + tube_radius * np.cos(V)) * np.cos(U),
        (spine_radius + tube_radius * np.cos(V)) * np.sin(U),
        tube_radius * np.sin(V),
    ))


def bump_patch(n=14, size=40.0) -> np.ndarray:
    s = np.linspace(-size / 2, size / 2, n)

    def mapper(U, V):
        z = (
            2.0 * np.exp(-((U - 3.0) ** 2 + (V + 2.0) ** 2) / 60.0)
            + 1.5 * np.exp(-((U + 6.0) ** 2 + (V - 5.0) ** 2) / 40.0)
        )
        return U, V, z

    return _grid(s, s, mapper)


def six_type_part() -> Part:
    """One exact instance of each geometry type, as six floating faces."""
    faces = [
        SampledFace("f-plane", plane_patch()),
        SampledFace("f-cylinder", cylinder_patch() + np.array([60.0, 0.0, 0.0])),
        SampledFace("f-cone", cone_patch() + np.array([0.0, 60.0, 30.0])),
        SampledFace("f-ruled", hypar_patch() + np.array([60.0, 60.0, 0.0])),
        SampledFace("f-sweep", torus_patch() + np.array([120.0, 0.0, 0.0])),
        SampledFace("f-freeform", bump_patch() + np.array([120.0, 60.0, 0.0])),
    ]
    return Part(id="six-types", faces=faces)


# ---------------------------------------------------------------------------
# the 24-face housing


def _bowed_wall(base: float, lo: float, hi: float, z0: float, z1: float,
                along: str, sign: float, nu=8, nv=10) -> np.ndarray:
    """Vertical pocket wall bowed by a cubic S-curve, rulings along z.

    along='y': wall at x ~ base spanning y in [lo, hi]; along='x': wall at
    y ~ base spanning x in [lo, hi]. sign picks the outward normal
    (+1 -> +x or +y).
    """
    mid = 0.5 * (lo + hi)
    z = np.linspace(z0, z1, nu)
    if along == "y":
        v = np.linspace(hi, lo, nv) if sign > 0 else np.linspace(lo, hi, nv)
        return _grid(z, v, lambda U, V: (
            base - sign * _WALL_S * (V - mid) ** 3, V, U))
    v = np.linspace(lo, hi, nv) if sign > 0 else np.linspace(hi, lo, nv)
    return _grid(z, v, lambda U, V: (
        V, base - sign * _WALL_S * (V - mid) ** 3, U))


def housing_part() -> Part:
    """The 24-face demonstration housing (100 x 80 x 40 mm block).

    Pocket [45, 80] x [25, 55] to depth z = 15 with four bowed ruled walls
    and a quarter-cylinder fillet (r = 3) at the west wall base; a blind
    bore (r = 6, z 5..15) in the pocket floor; a conical spout overhanging
    the south-west corner; a symmetric free-form bump on the north top.
    The blind bore bottom is intentionally unreachable by the coarse ray
    test and lands in the inaccessible exception list.
    """
    faces: list[SampledFace] = []

    def add(face_id: str, grid: np.ndarray, label: str | None = None) -> None:
        faces.append(SampledFace(face_id, grid, label=label))

    # Top faces (z = 40).
    add("top-s", _rect_z(0, 100, 0, 25, 40.0, 12, 6))

    def bump_mapper(U, V):
        z = np.full_like(U, 40.0)
        for cx, cy in ((35.0, 62.0), (65.0, 62.0), (35.0, 73.0), (65.0, 73.0)):
            z = z + 1.2 * np.exp(-(((U - cx) ** 2) + (V - cy) ** 2) / 72.0)
        return U, V, z

    add("top-n", _grid(np.linspace(0, 100, 16), np.linspace(55, 80, 8), bump_mapper),
        label="freeform boss blend")
    add("top-w1", _rect_z(0, 20, 25, 55, 40.0, 6, 6))
    add("top-w2", _rect_z(20, 45, 25, 55, 40.0, 6, 6))
    add("top-e1", _rect_z(80, 100, 25, 40, 40.0, 5, 5))
    add("top-e2", _rect_z(80, 100, 40, 55, 40.0, 5, 5))

    # Pocket walls (bowed, rulings vertical). The west wall starts above the
    # fillet that blends it into the floor.
    add("wall-w", _bowed_wall(45.0, 25.0, 55.0, 18.5, 40.0, "y", +1.0))
    add("wall-e", _bowed_wall(80.0, 25.0, 55.0, 15.0, 40.0, "y", -1.0))
    add("wall-s", _bowed_wall(25.0, 45.0, 80.0, 15.0, 40.0, "x", +1.0))
    add("wall-n", _bowed_wall(55.0, 45.0, 80.0, 15.0, 40.0, "x", -1.0))

    # Pocket floor ring around the bore (z = 15), extended 1 mm under the
    # walls so downward rays from the walls are blocked.
    add("floor-s", _rect_z(44, 81, 24, 33.5, 15.0, 8, 5))
    add("floor-n", _rect_z(44, 81, 46.5, 56, 15.0, 8, 5))
    add("floor-w", _rect_z(47, 56, 32.5, 47.5, 15.0, 6, 7))
    add("floor-e", _rect_z(69, 81, 32.5, 47.5, 15.0, 6, 7))

    # Blind bore: wall (normals inward) and bottom disk.
    cx, cy, r = 62.5, 40.0, 6.0
    add("bore-wall", _grid(np.linspace(5, 15, 6), np.linspace(0, 2 * np.pi, 25),
                           lambda U, V: (cx + r * np.cos(V), cy + r * np.sin(V), U)))
    add("bore-bottom", _grid(np.linspace(0.5, 5.9, 5), np.linspace(0, 2 * np.pi, 13),
                             lambda U, V: (cx + U * np.cos(V), cy + U * np.sin(V),
                                           np.full_like(U, 5.0))))

    # Quarter-cylinder fillet at the west wall base (r = 3.5, axis along y).
    add("fillet", _grid(np.linspace(0, np.pi / 2, 8), np.linspace(25, 55, 10),
                        lambda U, V: (48.5 - 3.5 * np.cos(U), V, 18.5 - 3.5 * np.sin(U))))

    # Bottom (z = 0), two halves with -z normals.
    add("bottom-1", _rect_z_down(0, 50, 0, 80, 0.0, 8, 6))
    add("bottom-2", _rect_z_down(50, 100, 0, 80, 0.0, 8, 6))

    # Outer side walls.
    add("side-w", _grid(np.linspace(0, 40, 8), np.linspace(0, 80, 6),
                        lambda U, V: (np.zeros_like(U), V, U)))
    add("side-e", _grid(np.linspace(0, 80, 6), np.linspace(0, 40, 8),
                        lambda U, V: (np.full_like(U, 100.0), U, V)))
    add("side-s", _grid(np.linspace(0, 100, 8), np.linspace(0, 40, 6),
                        lambda U, V: (U, np.zeros_like(U), V)))
    add("side-n", _grid(np.linspace(0, 40, 8), np.linspace(0, 100, 6),
                        lambda U, V: (V, np.full_like(U, 80.0), U)))

    # Conical spout at the south-west corner, apex up at (0, 0, 57),
    # overhanging outside the block (x < 0, y < 0).
    tan_g = 10.0 / 17.0
    add("spout", _grid(np.radians(np.linspace(190, 260, 8)), np.linspace(40, 52, 8),
                       lambda U, V: ((57.0 - V) * tan_g * np.cos(U),
                                     (57.0 - V) * tan_g * np.sin(U), V)),
        label="cast spout blank")

    table = _symmetrize([
        ("top-s", "side-s", 90), ("top-s", "side-w", 90), ("top-s", "side-e", 90),
        ("top-s", "top-w1", 180), ("top-s", "top-w2", 180), ("top-s", "top-e1", 180),
        ("top-s", "wall-s", 90),
        ("top-n", "side-n", 90), ("top-n", "side-w", 90), ("top-n", "side-e", 90),
        ("top-n", "top-w1", 180), ("top-n", "top-w2", 180), ("top-n", "top-e2", 180),
        ("top-n", "wall-n", 90),
        ("top-w1", "side-w", 90), ("top-w1", "top-w2", 180),
        ("top-w2", "wall-w", 90),
        ("top-e1", "side-e", 90), ("top-e1", "wall-e", 90), ("top-e1", "top-e2", 180),
        ("top-e2", "side-e", 90), ("top-e2", "wall-e", 90),
        ("wall-w", "wall-s", 270), ("wall-w", "wall-n", 270), ("wall-w", "fillet", 180),
        ("wall-e", "wall-s", 270), ("wall-e", "wall-n", 270), ("wall-e", "floor-e", 270),
        ("wall-s", "floor-s", 270), ("wall-n", "floor-n", 270),
        ("fillet", "floor-w", 180), ("fillet", "wall-s", 270), ("fillet", "wall-n", 270),
        ("floor-s", "floor-w", 180), ("floor-s", "floor-e", 180),
        ("floor-n", "floor-w", 180), ("floor-n", "floor-e", 180),
        ("floor-w", "bore-wall", 90), ("floor-e", "bore-wall", 90),
        ("bore-wall", "bore-bottom", 270),
        ("bottom-1", "bottom-2", 180), ("bottom-1", "side-w", 90),
        ("bottom-1", "side-s", 90), ("bottom-1", "side-n", 90),
        ("bottom-2", "side-e", 90), ("bottom-2", "side-s", 90), ("bottom-2", "side-n", 90),
        ("side-w", "side-s", 90), ("side-w", "side-n", 90), ("side-w", "spout", 90),
        ("side-e", "side-s", 90), ("side-e", "side-n", 90),
        ("side-s", "spout", 90),
    ])
    for face in faces:
        face.adjacency = _adjacency(table, face.id)
    return Part(id="housing-24", faces=faces)


# ---------------------------------------------------------------------------
# smaller demonstration parts


def web_part() -> Part:
    """A thin free-standing web on a base plate; both web flanks admit the
    two opposite ruling directions."""
    c = 8e-5
    base = _rect_z(-30, 30, -30, 30, 0.0, 8, 8)
    east = _grid(np.linspace(-15, 15, 10), np.linspace(0, 20, 8),
                 lambda U, V: (0.3 + c * (V - 10.0) ** 3, U, V))
    west = _grid(np.linspace(15, -15, 10), np.linspace(0, 20, 8),
                 lambda U, V: (-0.3 - c * (V - 10.0) ** 3, U, V))
    top = _grid(np.linspace(-0.3, 0.3, 2), np.linspace(-15, 15, 10),
                lambda U, V: (U, V, np.full_like(U, 20.0)))
    faces = [
        SampledFace("base-top", base),
        SampledFace("web-east", east),
        SampledFace("web-west", west),
        SampledFace("web-top", top),
    ]
    table = _symmetrize([
        ("base-top", "web-east", 270), ("base-top", "web-west", 270),
        ("web-east", "web-top", 90), ("web-west", "web-top", 90),
    ])
    for face in faces:
        face.adjacency = _adjacency(table, face.id)
    return Part(id="web-plate", faces=faces)


def pocket_depth_part() -> Part:
    """A 30 mm deep pocket: the floor's depth below the entry plane is 30."""
    faces = [
        SampledFace("rim-s", _rect_z(0, 70, 0, 20, 40.0, 8, 4)),
        SampledFace("rim-n", _rect_z(0, 70, 50, 70, 40.0, 8, 4)),
        SampledFace("rim-w", _rect_z(0, 20, 20, 50, 40.0, 4, 5)),
        SampledFace("rim-e", _rect_z(50, 70, 20, 50, 40.0, 4, 5)),
        SampledFace("pw-w", _bowed_wall(20.0, 20.0, 50.0, 10.0, 40.0, "y", +1.0)),
        SampledFace("pw-e", _bowed_wall(50.0, 20.0, 50.0, 10.0, 40.0, "y", -1.0)),
        SampledFace("pw-s", _bowed_wall(20.0, 20.0, 50.0, 10.0, 40.0, "x", +1.0)),
        SampledFace("pw-n", _bowed_wall(50.0, 20.0, 50.0, 10.0, 40.0, "x", -1.0)),
        SampledFace("pocket-floor", _rect_z(19, 51, 19, 51, 10.0, 7, 7)),
    ]
    table = _symmetrize([
        ("rim-s", "pw-s", 90), ("rim-n", "pw-n", 90),
        ("rim-w", "pw-w", 90), ("rim-e", "pw-e", 90),
        ("rim-s", "rim-w", 180), ("rim-s", "rim-e", 180),
        ("rim-n", "rim-w", 180), ("rim-n", "rim-e", 180),
        ("pw-w", "pw-s", 270), ("pw-s", "pw-e", 270),
        ("pw-e", "pw-n", 270), ("pw-n", "pw-w", 270),
        ("pocket-floor", "pw-w", 270), ("pocket-floor", "pw-e", 270),
        ("pocket-floor", "pw-s", 270), ("pocket-floor", "pw-n", 270),
    ])
    for face in faces:
        face.adjacency = _adjacency(table, face.id)
    return Part(id="deep-pocket", faces=faces)


def overhang_part() -> Part:
    """A plate under a cylindrical canopy: the plate face is unreachable."""
    plate = _rect_z(-20, 20, -20, 20, 0.0, 8, 8)
    canopy = _grid(np.linspace(-20, 20, 8), np.linspace(0, np.pi, 12),
                   lambda U, V: (15.0 * np.cos(V), U, 15.0 * np.sin(V)))
    faces = [SampledFace("plate-top", plate), SampledFace("canopy", canopy)]
    table = _symmetrize([("plate-top", "canopy", 90)])
    for face in faces:
        face.adjacency = _adjacency(table, face.id)
    return Part(id="canopy-plate", faces=faces)


def fillet_blend_part() -> Part:
    """A floor strip blending into a concave fillet of radius 3."""
    n_flat, n_arc = 7, 8
    profile: list[tuple[float, float]] = []
    for i in range(n_flat):
        profile.append((10.0 * i / (n_flat - 1), 0.0))
    for i in range(1, n_arc + 1):
        phi = (np.pi / 2) * i / n_arc
        profile.append((10.0 + 3.0 * np.sin(phi), 3.0 - 3.0 * np.cos(phi)))
    xs = np.array([p[0] for p in profile])
    zs = np.array([p[1] for p in profile])
    y = np.linspace(0.0, 18.0, 6)
    grid = np.stack([
        np.repeat(xs[:, None], len(y), axis=1),
        np.repeat(y[None, :], len(xs), axis=0),
        np.repeat(zs[:, None], len(y), axis=1),
    ], axis=-1)
    return Part(id="fillet-blend", faces=[SampledFace("floor-fillet", grid)])


def scale_part(cells_x: int = 10, cells_y: int = 10) -> Part:
    """Synthetic lattice of pockets: cells_x * cells_y * 5 faces."""
    c = 2e-4
    faces: list[SampledFace] = []
    pairs: list[tuple[str, str, float]] = []
    pitch = 22.0
    for i in range(cells_x):
        for j in range(cells_y):
            ox, oy = i * pitch, j * pitch
            tag = f"c{i}-{j}"
            x0, x1 = ox + 2.0, ox + 18.0
            y0, y1 = oy + 2.0, oy + 18.0
            mx, my = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
            floor = _rect_z(x0 - 0.5, x1 + 0.5, y0 - 0.5, y1 + 0.5, 0.0, 4, 4)
            w = _grid(np.linspace(0, 10, 4), np.linspace(y1, y0, 4),
                      lambda U, V: (x0 - c * (V - my) ** 3, V, U))
            e = _grid(np.linspace(0, 10, 4), np.linspace(y0, y1, 4),
                      lambda U, V: (x1 + c * (V - my) ** 3, V, U))
            s = _grid(np.linspace(0, 10, 4), np.linspace(x0, x1, 4),
                      lambda U, V: (V, y0 - c * (V - mx) ** 3, U))
            n = _grid(np.linspace(0, 10, 4), np.linspace(x1, x0, 4),
                      lambda U, V: (V, y1 + c * (V - mx) ** 3, U))
            faces.extend([
                SampledFace(f"{tag}-floor", floor),
                SampledFace(f"{tag}-w", w),
                SampledFace(f"{tag}-e", e),
                SampledFace(f"{tag}-s", s),
                SampledFace(f"{tag}-n", n),
            ])
            pairs.extend([
                (f"{tag}-floor", f"{tag}-w", 270), (f"{tag}-floor", f"{tag}-e", 270),
                (f"{tag}-floor", f"{tag}-s", 270), (f"{tag}-floor", f"{tag}-n", 270),
                (f"{tag}-w", f"{tag}-s", 270), (f"{tag}-s", f"{tag}-e", 270),
                (f"{tag}-e", f"{tag}-n", 270), (f"{tag}-n", f"{tag}-w", 270),
            ])
    table = _symmetrize(pairs)
    for face in faces:
        face.adjacency = _adjacency(table, face.id)
    return Part(id=f"lattice-{cells_x}x{cells_y}", faces=faces)


# ---------------------------------------------------------------------------
# seed knowledge base


def _check(lhs: str, op: str, *, ref: str | None = None, value=None,
           values=None) -> Check:
    return Check(
        lhs=AttributeRef.parse(lhs),
        op=op,
        ref=AttributeRef.parse(ref) if ref else None,
        value=value,
        values=tuple(values) if values is not None else None,
    )


_EQ4_TRIO = (
    _check("tool.diameter", "lt", ref="face.end_accessibility"),
    _check("tool.tool_length", "gt", ref="face.global_accessibility"),
    _check("face.min_fillet_radius", "ge", ref="tool.end_radius"),
)


def seed_database() -> OSEDatabase:
    tmcs = {
        "TMC-ALU-CARB": TMC(
            id="TMC-ALU-CARB", cut_material="AlZnMgCu", cutting_material="Carbide",
            constraints={
                "cutting_speed": Interval(200, 400),
                "feed_per_tooth": Interval(0.05, 0.3),
                "feed_rate": Interval(300, 2000),
            },
            lubrication="Emulsion",
        ),
        "TMC-STEEL-CARB": TMC(
            id="TMC-STEEL-CARB", cut_material="30CrMo", cutting_material="Carbide",
            constraints={
                "cutting_speed": Interval(80, 180),
                "feed_rate": Interval(100, 900),
            },
            lubrication="Dry",
        ),
        "TMC-ALU-HSS": TMC(
            id="TMC-ALU-HSS", cut_material="AlZnMgCu", cutting_material="HSS",
            constraints={
                "cutting_speed": Interval(60, 150),
                "feed_rate": Interval(100, 800),
            },
            lubrication="Emulsion",
        ),
    }

    all_modes = (Mode.ROUGHING, Mode.SEMI_FINISHING, Mode.FINISHING)
    cutting_set_types = {
        "cst-end-small": CuttingSetType(
            id="cst-end-small",
            diameter=Interval(4, 12), cutting_length=Interval(8, 30),
            tool_length=Interval(40, 80), end_radius=Interval(0, 2),
            cutting_material="Carbide",
            mfg_types=(MfgType.END, MfgType.FLANK, MfgType.SWEEPING),
            modes=all_modes,
            tmcs=("TMC-ALU-CARB", "TMC-STEEL-CARB"),
            conditions={
                "cutting_speed": Interval(60, 400),
                "feed_per_tooth": Interval(0.02, 0.3),
                "advance_x": Interval(0.5, 5),
                "advance_z": Interval(0.2, 3),
                "feed_rate": Interval(100, 2000),
            },
        ),
        "cst-end-large": CuttingSetType(
            id="cst-end-large",
            diameter=Interval(12, 40), cutting_length=Interval(20, 60),
            tool_length=Interval(60, 140), end_radius=Interval(0, 4),
            cutting_material="Carbide",
            mfg_types=(MfgType.END, MfgType.FLANK),
            modes=(Mode.ROUGHING, Mode.SEMI_FINISHING),
            tmcs=("TMC-ALU-CARB", "TMC-STEEL-CARB"),
            conditions={
                "cutting_speed": Interval(60, 350),
                "feed_per_tooth": Interval(0.05, 0.35),
                "advance_x": Interval(1, 8),
                "advance_z": Interval(0.5, 5),
                "feed_rate": Interval(100, 1800),
            },
        ),
        "cst-ball": CuttingSetType(
            id="cst-ball",
            diameter=Interval(4, 14), cutting_length=Interval(8, 20),
            tool_length=Interval(40, 100), end_radius=Interval(2, 7),
            cutting_material="Carbide",
            mfg_types=(MfgType.SWEEPING, MfgType.END),
            modes=all_modes,
            tmcs=("TMC-ALU-CARB",),
            conditions={
                "cutting_speed": Interval(60, 380),
                "feed_per_tooth": Interval(0.02, 0.2),
                "advance_x": Interval(0.2, 3),
                "advance_z": Interval(0.1, 2),
                "feed_rate": Interval(100, 1500),
            },
        ),
        "cst-drill": CuttingSetType(
            id="cst-drill",
            diameter=Interval(3, 20), cutting_length=Interval(20, 80),
            tool_length=Interval(60, 160), end_radius=Interval(0, 0.5),
            cutting_material="HSS",
            mfg_types=(MfgType.DRILLING,),
            modes=(Mode.ROUGHING,),
            tmcs=("TMC-ALU-HSS",),
            conditions={
                "cutting_speed": Interval(30, 160),
                "feed_per_tooth": Interval(0.02, 0.2),
                "advance_x": Interval(0.1, 1),
                "advance_z": Interval(0.5, 10),
                "feed_rate": Interval(40, 400),
            },
        ),
    }

    configs = {
        "cfg-end-rough": ExtendedCuttingConditions(
            id="cfg-end-rough", mfg_type=MfgType.END, mode=Mode.ROUGHING,
            allowed_tmcs=("TMC-ALU-CARB", "TMC-STEEL-CARB"), priority=Priority.QMAX,
            trajectory_strategy=TrajectoryStrategy.BACK_AND_FORTH,
        ),
        "cfg-end-semi": ExtendedCuttingConditions(
            id="cfg-end-semi", mfg_type=MfgType.END, mode=Mode.SEMI_FINISHING,
            allowed_tmcs=("TMC-ALU-CARB",), priority=Priority.DEFAULT,
            trajectory_strategy=TrajectoryStrategy.FORTH,
        ),
        "cfg-end-finish": ExtendedCuttingConditions(
            id="cfg-end-finish", mfg_type=MfgType.END, mode=Mode.FINISHING,
            allowed_tmcs=("TMC-ALU-CARB",), priority=Priority.DEFAULT,
            trajectory_strategy=TrajectoryStrategy.IN_OUT_SPIRAL,
        ),
        "cfg-flank-rough": ExtendedCuttingConditions(
            id="cfg-flank-rough", mfg_type=MfgType.FLANK, mode=Mode.ROUGHING,
            allowed_tmcs=("TMC-ALU-CARB", "TMC-STEEL-CARB"), priority=Priority.QMAX,
            trajectory_strategy=TrajectoryStrategy.FLANK,
        ),
        "cfg-flank-finish": ExtendedCuttingConditions(
            id="cfg-flank-finish", mfg_type=MfgType.FLANK, mode=Mode.FINISHING,
            allowed_tmcs=("TMC-ALU-CARB",), priority=Priority.DEFAULT,
            trajectory_strategy=TrajectoryStrategy.FLANK,
        ),
        "cfg-sweep-semi": ExtendedCuttingConditions(
            id="cfg-sweep-semi", mfg_type=MfgType.SWEEPING, mode=Mode.SEMI_FINISHING,
            allowed_tmcs=("TMC-ALU-CARB",), priority=Priority.DEFAULT,
            trajectory_strategy=TrajectoryStrategy.SWEEPING,
        ),
        "cfg-drill": ExtendedCuttingConditions(
            id="cfg-drill", mfg_type=MfgType.DRILLING, mode=Mode.ROUGHING,
            allowed_tmcs=("TMC-ALU-HSS",), priority=Priority.QMAX,
            trajectory_strategy=TrajectoryStrategy.NORMAL_DRILLING,
        ),
    }

    families = {
        "fam-plan-end": GeometryFamily(
            id="fam-plan-end", required_type=GeometryType.PLAN,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.END.value]),
                _check("face.access_kinds", "contains_any",
                       values=["SingleVector"]),
                _check("face.access_compulsory", "eq", value=True),
            ),
        ),
        "fam-plan-end-open": GeometryFamily(
            id="fam-plan-end-open", required_type=GeometryType.PLAN,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.END.value]),
                _check("face.openness", "eq", value="Open"),
            ),
        ),
        "fam-ruled-flank": GeometryFamily(
            id="fam-ruled-flank", required_type=GeometryType.RULED,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.FLANK.value]),
            ),
        ),
        "fam-cyl-drill": GeometryFamily(
            id="fam-cyl-drill", required_type=GeometryType.CYLINDER,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.DRILLING.value]),
                _check("face.openness", "eq", value="Closed"),
            ),
        ),
        "fam-cyl-flank": GeometryFamily(
            id="fam-cyl-flank", required_type=GeometryType.CYLINDER,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.FLANK.value]),
            ),
        ),
        "fam-cyl-ball": GeometryFamily(
            id="fam-cyl-ball", required_type=GeometryType.CYLINDER,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.END.value, MfgType.SWEEPING.value]),
                _check("face.openness", "eq", value="Closed"),
            ),
        ),
        "fam-cone-flank": GeometryFamily(
            id="fam-cone-flank", required_type=GeometryType.CONE_SHAPED,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.FLANK.value]),
            ),
        ),
        "fam-unspec-sweep": GeometryFamily(
            id="fam-unspec-sweep", required_type=GeometryType.UNSPECIFIED,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.SWEEPING.value]),
            ),
        ),
        "fam-sweep-ball": GeometryFamily(
            id="fam-sweep-ball", required_type=GeometryType.CONST_RADIUS_SWEEP,
            checks=(
                _check("face.potential_mfg_types", "contains_any",
                       values=[MfgType.SWEEPING.value]),
            ),
        ),
    }

    oses = {
        "ose-plan-rough-small": OSE(
            id="ose-plan-rough-small", family="fam-plan-end",
            config="cfg-end-rough", cutting_set_type="cst-end-small",
            compliance_checks=_EQ4_TRIO,
        ),
        "ose-plan-rough-large": OSE(
            id="ose-plan-rough-large", family="fam-plan-end",
            config="cfg-end-rough", cutting_set_type="cst-end-large",
            compliance_checks=_EQ4_TRIO + (_check("tool.diameter", "ge", value=12),),
        ),
        "ose-plan-semi": OSE(
            id="ose-plan-semi", family="fam-plan-end",
            config="cfg-end-semi", cutting_set_type="cst-end-small",
            compliance_checks=_EQ4_TRIO,
        ),
        "ose-plan-finish": OSE(
            id="ose-plan-finish", family="fam-plan-end-open",
            config="cfg-end-finish", cutting_set_type="cst-end-small",
            compliance_checks=_EQ4_TRIO,
        ),
        "ose-ruled-flank": OSE(
            id="ose-ruled-flank", family="fam-ruled-flank",
            config="cfg-flank-rough", cutting_set_type="cst-end-small",
            compliance_checks=(
                _check("face.min_fillet_radius", "ge", ref="tool.end_radius"),
                _check("tool.tool_length", "gt", ref="face.global_accessibility"),
            ),
        ),
        "ose-cyl-drill": OSE(
            id="ose-cyl-drill", family="fam-cyl-drill",
            config="cfg-drill", cutting_set_type="cst-drill",
            compliance_checks=(
                _check("tool.diameter", "le", ref="face.end_accessibility"),
                _check("tool.tool_length", "gt", ref="face.global_accessibility"),
            ),
        ),
        "ose-cyl-flank": OSE(
            id="ose-cyl-flank", family="fam-cyl-flank",
            config="cfg-flank-finish", cutting_set_type="cst-end-small",
            compliance_checks=(
                _check("tool.diameter", "le", ref="face.end_accessibility"),
                _check("face.min_fillet_radius", "ge", ref="tool.end_radius"),
            ),
        ),
        "ose-fillet-ball": OSE(
            id="ose-fillet-ball", family="fam-cyl-ball",
            config="cfg-sweep-semi", cutting_set_type="cst-ball",
            compliance_checks=(
                _check("face.min_fillet_radius", "ge", ref="tool.end_radius"),
                _check("tool.diameter", "le", ref="face.flank_accessibility"),
            ),
        ),
        "ose-cone-flank": OSE(
            id="ose-cone-flank", family="fam-cone-flank",
            config="cfg-flank-rough", cutting_set_type="cst-end-small",
            compliance_checks=(
                _check("face.min_fillet_radius", "ge", ref="tool.end_radius"),
                _check("tool.tool_length", "gt", ref="face.global_accessibility"),
            ),
        ),
        "ose-unspec-sweep": OSE(
            id="ose-unspec-sweep", family="fam-unspec-sweep",
            config="cfg-sweep-semi", cutting_set_type="cst-ball",
            compliance_checks=(
                _check("face.min_fillet_radius", "ge", ref="tool.end_radius"),
                _check("tool.diameter", "lt", ref="face.end_accessibility"),
            ),
        ),
        "ose-sweep-ball": OSE(
            id="ose-sweep-ball", family="fam-sweep-ball",
            config="cfg-sweep-semi", cutting_set_type="cst-ball",
            compliance_checks=(
                _check("face.min_fillet_radius", "ge", ref="tool.end_radius"),
            ),
        ),
    }

    return OSEDatabase(
        families=families, configs=configs,
        cutting_set_types=cutting_set_types, tmcs=tmcs, oses=oses,
    )


def seed_tools() -> list[CuttingSet]:
    all_modes = (Mode.ROUGHING, Mode.SEMI_FINISHING, Mode.FINISHING)
    em_caps = dict(
        cutting_material="Carbide",
        mfg_types=(MfgType.END, MfgType.FLANK, MfgType.SWEEPING),
        modes=all_modes,
        tmcs=("TMC-ALU-CARB", "TMC-STEEL-CARB"),
        conditions={
            "cutting_speed": Interval(80, 350),
            "feed_per_tooth": Interval(0.03, 0.25),
            "advance_x": Interval(0.5, 5),
            "advance_z": Interval(0.2, 3),
            "feed_rate": Interval(100, 1600),
        },
    )
    ball_caps = dict(
        cutting_material="Carbide",
        mfg_types=(MfgType.SWEEPING, MfgType.END),
        modes=all_modes,
        tmcs=("TMC-ALU-CARB",),
        conditions={
            "cutting_speed": Interval(80, 320),
            "feed_per_tooth": Interval(0.02, 0.18),
            "advance_x": Interval(0.2, 3),
            "advance_z": Interval(0.1, 2),
            "feed_rate": Interval(100, 1200),
        },
    )
    drill_caps = dict(
        cutting_material="HSS",
        mfg_types=(MfgType.DRILLING,),
        modes=(Mode.ROUGHING,),
        tmcs=("TMC-ALU-HSS",),
        conditions={
            "cutting_speed": Interval(40, 120),
            "feed_per_tooth": Interval(0.02, 0.15),
            "advance_x": Interval(0.1, 1),
            "advance_z": Interval(0.5, 8),
            "feed_rate": Interval(50, 300),
        },
    )
    return [
        CuttingSet(id="EM6", diameter=6, cutting_length=12, tool_length=50,
                   end_radius=0.5, **em_caps),
        CuttingSet(id="EM8", diameter=8, cutting_length=16, tool_length=60,
                   end_radius=0.5, **em_caps),
        CuttingSet(id="EM10", diameter=10, cutting_length=21, tool_length=70,
                   end_radius=1.0, **em_caps),
        CuttingSet(id="EM12", diameter=12, cutting_length=25, tool_length=75,
                   end_radius=1.0, **em_caps),
        CuttingSet(id="EM16", diameter=16, cutting_length=30, tool_length=90,
                   end_radius=2.0, **em_caps),
        CuttingSet(id="EM20", diameter=20, cutting_length=32, tool_length=100,
                   end_radius=2.0, **em_caps),
        CuttingSet(id="EM25", diameter=25, cutting_length=40, tool_length=110,
                   end_radius=3.0, **em_caps),
        CuttingSet(id="BALL6", diameter=6, cutting_length=12, tool_length=60,
                   end_radius=3.0, **ball_caps),
        CuttingSet(id="BALL8", diameter=8, cutting_length=14, tool_length=70,
                   end_radius=4.0, **ball_caps),
        CuttingSet(id="BALL12", diameter=12, cutting_length=18, tool_length=80,
                   end_radius=6.0, **ball_caps),
        CuttingSet(id="DRILL6", diameter=6, cutting_length=30, tool_length=80,
                   end_radius=0.1, **drill_caps),
        CuttingSet(id="DRILL10", diameter=10, cutting_length=40, tool_length=100,
                   end_radius=0.1, **drill_caps),
        CuttingSet(id="DRILL12", diameter=12, cutting_length=45, tool_length=110,
                   end_radius=0.2, **drill_caps),
        CuttingSet(id="GIANT50", diameter=50, cutting_length=60, tool_length=160,
                   end_radius=5.0, **em_caps),
    ]


def audit_defect_database() -> OSEDatabase:
    """Seed database plus one duplicated OSE and one unsatisfiable OSE."""
    db = seed_database()
    original = db.oses["ose-plan-rough-small"]
    db.oses["ose-plan-rough-small-copy"] = OSE(
        id="ose-plan-rough-small-copy",
        family=original.family,
        config=original.config,
        cutting_set_type=original.cutting_set_type,
        compliance_checks=original.compliance_checks,
    )
    db.oses["ose-impossible"] = OSE(
        id="ose-impossible", family="fam-plan-end-open",
        config="cfg-end-semi", cutting_set_type="cst-end-large",
        compliance_checks=(_check("tool.diameter", "lt", value=5),),
    )
    return db


def whatif_covered_database() -> OSEDatabase:
    """Seed database completed so every mode variant of the end-roughing
    entry is covered."""
    db = seed_database()
    db.oses["ose-plan-finish-closed"] = OSE(
        id="ose-plan-finish-closed", family="fam-plan-end",
        config="cfg-end-finish", cutting_set_type="cst-end-small",
        compliance_checks=_EQ4_TRIO,
    )
    return db


# ---------------------------------------------------------------------------
# file emission


def write_all(directory: str) -> list[str]:
    """Write every shipped fixture as JSON into the directory."""
    import pathlib

    from .io_formats import dumps, serialize_osedb, serialize_part, serialize_tools

    out = pathlib.Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    def emit(name: str, data) -> None:
        path = out / name
        path.write_text(dumps(data) + "\n", encoding="utf-8")
        written.append(str(path))

    emit("housing_24.json", serialize_part(housing_part()))
    emit("six_types.json", serialize_part(six_type_part()))
    emit("web_plate.json", serialize_part(web_part()))
    emit("deep_pocket.json", serialize_part(pocket_depth_part()))
    emit("canopy_plate.json", serialize_part(overhang_part()))
    emit("fillet_blend.json", serialize_part(fillet_blend_part()))
    emit("osedb_seed.json", serialize_osedb(seed_database()))
    emit("tools_seed.json", serialize_tools(seed_tools()))
    emit("osedb_audit_defects.json", serialize_osedb(audit_defect_database()))
    return written


if __name__ == "__main__":
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    for path in write_all(target):
        print(path)
