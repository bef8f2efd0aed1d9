"""Least-squares surface fits used by face classification.

All fits return an RMS orthogonal residual in millimetres. The iterative
fits (cylinder, cone) are seeded from the sample normals and refined with a
bounded Levenberg-Marquardt pass; running out of the iteration budget is
reported as failure, which callers treat as "not this surface type".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from . import kernels

__all__ = [
    "FitError",
    "PlaneFit",
    "CylinderFit",
    "ConeFit",
    "SweepFit",
    "fit_plane",
    "fit_cylinder",
    "fit_cone",
    "ruled_deviation",
    "fit_constant_radius_sweep",
]

ITERATION_BUDGET = 100


class FitError(ValueError):
    """Raised when a fit is underdetermined or does not converge."""


@dataclass(frozen=True)
class PlaneFit:
    normal: np.ndarray
    offset: float
    residual: float


@dataclass(frozen=True)
class CylinderFit:
    axis_point: np.ndarray
    axis_direction: np.ndarray
    radius: float
    residual: float


@dataclass(frozen=True)
class ConeFit:
    apex: np.ndarray
    axis_direction: np.ndarray
    half_angle: float
    residual: float


@dataclass(frozen=True)
class SweepFit:
    radius: float
    spread: float


def _as_points(grid: np.ndarray) -> np.ndarray:
    pts = np.asarray(grid, dtype=float)
    if pts.ndim == 3:
        pts = pts.reshape(-1, 3)
    return pts


def fit_plane(grid: np.ndarray) -> PlaneFit:
    """Orthogonal least-squares plane through the samples.

    The plane is n . p = offset with unit n; residual is the RMS orthogonal
    distance. Collinear samples leave the normal undetermined and raise.
    """
    pts = _as_points(grid)
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    _, svals, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(float(svals[0]), 1e-12)
    if svals[1] / scale < 1e-9:
        raise FitError("underdetermined fit: samples are collinear")
    normal = vt[2]
    residual = float(np.sqrt(np.mean((centered @ normal) ** 2)))
    return PlaneFit(normal=normal, offset=float(normal @ centroid), residual=residual)


def _normal_covariance_axis(grid: np.ndarray) -> np.ndarray:
    """Direction minimizing the variance of normal projections.

    Cylinder normals are orthogonal to the axis and cone normals keep a
    constant angle to it, so the smallest-eigenvalue direction of the normal
    covariance seeds both axis estimates.
    """
    g = np.asarray(grid, dtype=float)
    normals = kernels.grid_normals(g).reshape(-1, 3)
    centered = normals - normals.mean(axis=0)
    cov = centered.T @ centered
    w, v = np.linalg.eigh(cov)
    return v[:, 0]


def _cylinder_residuals(params: np.ndarray, pts: np.ndarray) -> np.ndarray:
    cx, cy, cz, theta, phi, r = params
    axis = np.array([
        np.sin(theta) * np.cos(phi),
        np.sin(theta) * np.sin(phi),
        np.cos(theta),
    ])
    rel = pts - np.array([cx, cy, cz])
    proj = rel - np.outer(rel @ axis, axis)
    return np.linalg.norm(proj, axis=1) - r


def _direction_angles(d: np.ndarray) -> tuple[float, float]:
    d = d / np.linalg.norm(d)
    theta = float(np.arccos(np.clip(d[2], -1.0, 1.0)))
    phi = float(np.arctan2(d[1], d[0]))
    return theta, phi


def _converged(result, pts: np.ndarray) -> bool:
    """A budget-exhausted run still counts when the residual already sits at
    numerical noise relative to the data scale."""
    if result.status > 0:
        return True
    rms = float(np.sqrt(np.mean(result.fun ** 2)))
    scale = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0))) or 1.0
    return rms <= 1e-8 * scale


def fit_cylinder(grid: np.ndarray) -> CylinderFit:
    """Least-squares circular cylinder; requires a grid of at least 3 x 3."""
    g = np.asarray(grid, dtype=float)
    if g.ndim != 3 or g.shape[0] < 3 or g.shape[1] < 3:
        raise FitError("cylinder fit needs a grid of at least 3 x 3")
    pts = _as_points(g)
    axis = _normal_covariance_axis(g)

    # Seed radius/center from a circle fit in the plane orthogonal to the axis.
    e1 = np.cross(axis, [1.0, 0.0, 0.0])
    if np.linalg.norm(e1) < 1e-6:
        e1 = np.cross(axis, [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    centroid = pts.mean(axis=0)
    rel = pts - centroid
    xy = np.stack([rel @ e1, rel @ e2], axis=1)
    # Kasa circle fit: minimize |x|^2 - 2 c.x + (|c|^2 - r^2) linearly.
    A = np.column_stack([2.0 * xy, np.ones(len(xy))])
    b = (xy ** 2).sum(axis=1)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    c2d = sol[:2]
    r0 = float(np.sqrt(max(sol[2] + c2d @ c2d, 1e-12)))
    center0 = centroid + c2d[0] * e1 + c2d[1] * e2
    theta0, phi0 = _direction_angles(axis)

    x0 = np.array([*center0, theta0, phi0, r0])
    result = least_squares(
        _cylinder_residuals, x0, args=(pts,), max_nfev=ITERATION_BUDGET, method="lm"
    )
    if not _converged(result, pts):
        raise FitError("cylinder fit failed: iteration budget exhausted")
    cx, cy, cz, theta, phi, r = result.x
    if r <= 0:
        raise FitError("cylinder fit failed: non-positive radius")
    axis = np.array([
        np.sin(theta) * np.cos(phi),
        np.sin(theta) * np.sin(phi),
        np.cos(theta),
    ])
    residual = float(np.sqrt(np.mean(result.fun ** 2)))
    return CylinderFit(
        axis_point=np.array([cx, cy, cz]),
        axis_direction=axis / np.linalg.norm(axis),
        radius=float(abs(r)),
        residual=residual,
    )


def _cone_residuals(params: np.ndarray, pts: np.ndarray) -> np.ndarray:
    ax, ay, az, theta, phi, gamma = params
    axis = np.array([
        np.sin(theta) * np.cos(phi),
        np.sin(theta) * np.sin(phi),
        np.cos(theta),
    ])
    rel = pts - np.array([ax, ay, az])
    t = rel @ axis
    rho = np.linalg.norm(rel - np.outer(t, axis), axis=1)
    # Orthogonal distance to the cone surface of half-angle gamma.
    return rho * np.cos(gamma) - t * np.sin(gamma)


def fit_cone(grid: np.ndarray) -> ConeFit:
    """Least-squares circular cone (apex, axis, half-angle in radians)."""
    g = np.asarray(grid, dtype=float)
    if g.ndim != 3 or g.shape[0] < 3 or g.shape[1] < 3:
        raise FitError("cone fit needs a grid of at least 3 x 3")
    pts = _as_points(g)
    axis = _normal_covariance_axis(g)
    centroid = pts.mean(axis=0)

    # Seed a point on the axis from per-section circle fits: one iso-curve
    # family of the grid traces the cone's circular sections, whose centers
    # all project onto the axis.
    e1 = np.cross(axis, [1.0, 0.0, 0.0])
    if np.linalg.norm(e1) < 1e-6:
        e1 = np.cross(axis, [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)

    def _family_centers(curves: np.ndarray) -> tuple[float, np.ndarray] | None:
        centers = []
        residuals = []
        for k in range(curves.shape[0]):
            rel = curves[k] - centroid
            xy = np.stack([rel @ e1, rel @ e2], axis=1)
            A = np.column_stack([2.0 * xy, np.ones(len(xy))])
            b = (xy ** 2).sum(axis=1)
            try:
                sol, *_ = np.linalg.lstsq(A, b, rcond=None)
            except np.linalg.LinAlgError:
                return None
            r2 = sol[2] + sol[:2] @ sol[:2]
            if not np.isfinite(r2) or r2 <= 0 or r2 > 1e12:
                return None
            radii = np.linalg.norm(xy - sol[:2], axis=1)
            centers.append(sol[:2])
            residuals.append(float(np.std(radii)))
        return float(np.median(residuals)), np.mean(centers, axis=0)

    best_center = np.zeros(2)
    best_score = np.inf
    for curves in (g, g.transpose(1, 0, 2)):
        scored = _family_centers(curves)
        if scored is not None and scored[0] < best_score:
            best_score, best_center = scored
    axis_point = centroid + best_center[0] * e1 + best_center[1] * e2

    # Seed slope and apex from the linear relation rho = tan(gamma) * (t - t0).
    t = (pts - axis_point) @ axis
    rho = np.linalg.norm((pts - axis_point) - np.outer(t, axis), axis=1)
    A = np.column_stack([t, np.ones(len(t))])
    sol, *_ = np.linalg.lstsq(A, rho, rcond=None)
    slope, intercept = float(sol[0]), float(sol[1])
    if abs(slope) < 1e-9:
        raise FitError("cone fit failed: degenerate slope (cylinder-like)")
    if slope < 0:
        t0 = intercept / slope
        axis = -axis
        slope = -slope
    else:
        t0 = -intercept / slope
    gamma0 = float(np.arctan(slope))
    apex0 = axis_point + t0 * axis
    theta0, phi0 = _direction_angles(axis)

    x0 = np.array([*apex0, theta0, phi0, gamma0])
    result = least_squares(
        _cone_residuals, x0, args=(pts,), max_nfev=ITERATION_BUDGET, method="lm"
    )
    if not _converged(result, pts):
        raise FitError("cone fit failed: iteration budget exhausted")
    ax, ay, az, theta, phi, gamma = result.x
    axis = np.array([
        np.sin(theta) * np.cos(phi),
        np.sin(theta) * np.sin(phi),
        np.cos(theta),
    ])
    gamma = float(abs(gamma)) % np.pi
    if gamma > np.pi / 2:
        gamma = np.pi - gamma
        axis = -axis
    if gamma < 1e-6 or gamma > np.pi / 2 - 1e-6:
        raise FitError("cone fit failed: degenerate half-angle")
    residual = float(np.sqrt(np.mean(result.fun ** 2)))
    return ConeFit(
        apex=np.array([ax, ay, az]),
        axis_direction=axis / np.linalg.norm(axis),
        half_angle=gamma,
        residual=residual,
    )


def _max_line_deviation(curve: np.ndarray) -> float:
    """Max distance from points of one iso-curve to its least-squares line."""
    centroid = curve.mean(axis=0)
    centered = curve - centroid
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    direction = vt[0]
    offsets = centered - np.outer(centered @ direction, direction)
    return float(np.max(np.linalg.norm(offsets, axis=1)))


def ruled_deviation(grid: np.ndarray) -> tuple[float, int]:
    """Deviation of the straighter iso-parameter family from exact lines.

    Returns (max deviation over the best family, family axis: 0 = rows are
    rulings, 1 = columns are rulings).
    """
    g = np.asarray(grid, dtype=float)
    dev_rows = max(_max_line_deviation(g[i, :, :]) for i in range(g.shape[0]))
    dev_cols = max(_max_line_deviation(g[:, j, :]) for j in range(g.shape[1]))
    if dev_cols <= dev_rows:
        return dev_cols, 1
    return dev_rows, 0


def _circle_radius_3d(curve: np.ndarray) -> float:
    """Radius of the least-squares circle of a 3D arc (inf if straight)."""
    centroid = curve.mean(axis=0)
    centered = curve - centroid
    _, svals, vt = np.linalg.svd(centered, full_matrices=False)
    if svals[1] < 1e-12:
        return np.inf
    e1, e2 = vt[0], vt[1]
    xy = np.stack([centered @ e1, centered @ e2], axis=1)
    A = np.column_stack([2.0 * xy, np.ones(len(xy))])
    b = (xy ** 2).sum(axis=1)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    r2 = sol[2] + sol[:2] @ sol[:2]
    if r2 <= 0:
        return np.inf
    return float(np.sqrt(r2))


def _collapse_spread(grid: np.ndarray, normals: np.ndarray, radius: float,
                     family_axis: int, sign: float) -> float:
    """Max per-section spread after offsetting samples along normals.

    For a true constant-radius sweep every section (iso-curve of the arc
    family) collapses to a single spine point. Border samples carry one-sided
    finite-difference normals, so the spread is measured on the interior.
    """
    offset = grid + sign * radius * normals
    if offset.shape[0] >= 4 and offset.shape[1] >= 4:
        offset = offset[1:-1, 1:-1]
    if family_axis == 0:
        sections = offset
    else:
        sections = offset.transpose(1, 0, 2)
    centers = sections.mean(axis=1, keepdims=True)
    spread = np.linalg.norm(sections - centers, axis=2)
    return float(spread.max())


def fit_constant_radius_sweep(grid: np.ndarray) -> SweepFit:
    """Best constant tube radius collapsing one iso-family to a space curve.

    Candidate radii come from per-section circle fits; the search refines
    around the median section radius and both offset signs, for both
    families. spread is the reported collapse quality.
    """
    g = np.asarray(grid, dtype=float)
    if g.ndim != 3 or g.shape[0] < 3 or g.shape[1] < 3:
        raise FitError("sweep fit needs a grid of at least 3 x 3")
    normals = kernels.grid_normals(g)
    best = SweepFit(radius=0.0, spread=np.inf)
    for family_axis in (0, 1):
        curves = g if family_axis == 0 else g.transpose(1, 0, 2)
        radii = np.array([_circle_radius_3d(curves[i]) for i in range(curves.shape[0])])
        radii = radii[np.isfinite(radii)]
        if radii.size == 0:
            continue
        r_seed = float(np.median(radii))
        if not np.isfinite(r_seed) or r_seed <= 0:
            continue
        for sign in (1.0, -1.0):
            # Golden-section refinement of the collapse spread around the seed.
            lo_r, hi_r = 0.5 * r_seed, 1.5 * r_seed
            golden = 0.5 * (np.sqrt(5.0) - 1.0)
            a_r, b_r = lo_r, hi_r
            c_r = b_r - golden * (b_r - a_r)
            d_r = a_r + golden * (b_r - a_r)
            fc = _collapse_spread(g, normals, c_r, family_axis, sign)
            fd = _collapse_spread(g, normals, d_r, family_axis, sign)
            for _ in range(40):
                if fc < fd:
                    b_r, d_r, fd = d_r, c_r, fc
                    c_r = b_r - golden * (b_r - a_r)
                    fc = _collapse_spread(g, normals, c_r, family_axis, sign)
                else:
                    a_r, c_r, fc = c_r, d_r, fd
                    d_r = a_r + golden * (b_r - a_r)
                    fd = _collapse_spread(g, normals, d_r, family_axis, sign)
            r_best = 0.5 * (a_r + b_r)
            spread = _collapse_spread(g, normals, r_best, family_axis, sign)
            if spread < best.spread:
                best = SweepFit(radius=r_best, spread=spread)
    if not np.isfinite(best.spread):
        raise FitError("sweep fit failed: no circular section family")
    return best
