"""Hot numeric kernels: occlusion ray casting, grid normals, curvature.

Each kernel has a pure-numpy implementation and a numba @njit twin. The njit
path is used when numba imports cleanly; set OSEPLAN_PURE_NUMPY=1 to force
the numpy path (benchmarks/bench_kernels.py compares the two).
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "backend_name",
    "occlusion_blocked",
    "grid_normals",
    "max_concave_curvature",
]

_FORCE_NUMPY = os.environ.get("OSEPLAN_PURE_NUMPY", "").strip() not in ("", "0")


# ---------------------------------------------------------------------------
# numpy implementations


def _np_occlusion_blocked(origins: np.ndarray, direction: np.ndarray,
                          boxes: np.ndarray, clearance: float) -> bool:
    """True if any ray origin + t*direction (t > clearance) crosses any box.

    Boxes are (M, 6) rows [xmin, ymin, zmin, xmax, ymax, zmax]. Each box is
    shrunk per axis by clearance * (1 - |d_axis|) on both sides so that
    grazing passes parallel to a thin box do not count as blockage, while a
    thin box square-on to the ray still blocks.
    """
    if boxes.shape[0] == 0 or origins.shape[0] == 0:
        return False
    d = direction
    shrink = clearance * (1.0 - np.abs(d))
    lo = boxes[:, 0:3] + shrink
    hi = boxes[:, 3:6] - shrink
    ok = np.all(lo <= hi, axis=1)
    lo, hi = lo[ok], hi[ok]
    if lo.shape[0] == 0:
        return False

    t0 = np.full((origins.shape[0], lo.shape[0]), clearance)
    t1 = np.full_like(t0, np.inf)
    alive = np.ones_like(t0, dtype=bool)
    for axis in range(3):
        p = origins[:, axis][:, None]
        if abs(d[axis]) > 1e-12:
            ta = (lo[None, :, axis] - p) / d[axis]
            tb = (hi[None, :, axis] - p) / d[axis]
            lo_t = np.minimum(ta, tb)
            hi_t = np.maximum(ta, tb)
            t0 = np.maximum(t0, lo_t)
            t1 = np.minimum(t1, hi_t)
        else:
            alive &= (p >= lo[None, :, axis]) & (p <= hi[None, :, axis])
    return bool(np.any(alive & (t0 <= t1)))


def _np_grid_normals(grid: np.ndarray) -> np.ndarray:
    """Unit normals per sample from finite-difference tangents (du x dv)."""
    du = np.empty_like(grid)
    dv = np.empty_like(grid)
    du[1:-1, :, :] = grid[2:, :, :] - grid[:-2, :, :]
    du[0, :, :] = grid[1, :, :] - grid[0, :, :]
    du[-1, :, :] = grid[-1, :, :] - grid[-2, :, :]
    dv[:, 1:-1, :] = grid[:, 2:, :] - grid[:, :-2, :]
    dv[:, 0, :] = grid[:, 1, :] - grid[:, 0, :]
    dv[:, -1, :] = grid[:, -1, :] - grid[:, -2, :]
    n = np.cross(du, dv)
    norm = np.linalg.norm(n, axis=2, keepdims=True)
    norm[norm == 0.0] = 1.0
    return n / norm


def _np_max_concave_curvature(grid: np.ndarray, normals: np.ndarray,
                              eps: float) -> float:
    """Largest positive principal curvature over interior samples (0 if none).

    Positive curvature means the center of curvature lies on the normal side,
    i.e. the surface is hollow toward the tool; its reciprocal is the local
    fillet radius.
    """
    rows, cols = grid.shape[0], grid.shape[1]
    if rows < 3 or cols < 3:
        return 0.0
    pu = 0.5 * (grid[2:, 1:-1] - grid[:-2, 1:-1])
    pv = 0.5 * (grid[1:-1, 2:] - grid[1:-1, :-2])
    puu = grid[2:, 1:-1] - 2.0 * grid[1:-1, 1:-1] + grid[:-2, 1:-1]
    pvv = grid[1:-1, 2:] - 2.0 * grid[1:-1, 1:-1] + grid[1:-1, :-2]
    puv = 0.25 * (grid[2:, 2:] - grid[2:, :-2] - grid[:-2, 2:] + grid[:-2, :-2])
    n = normals[1:-1, 1:-1]

    E = np.einsum("ijk,ijk->ij", pu, pu)
    F = np.einsum("ijk,ijk->ij", pu, pv)
    G = np.einsum("ijk,ijk->ij", pv, pv)
    L = np.einsum("ijk,ijk->ij", puu, n)
    M = np.einsum("ijk,ijk->ij", puv, n)
    N = np.einsum("ijk,ijk->ij", pvv, n)

    a = E * G - F * F
    b = -(E * N + G * L - 2.0 * F * M)
    c = L * N - M * M
    best = 0.0
    flat_a, flat_b, flat_c = a.ravel(), b.ravel(), c.ravel()
    for i in range(flat_a.size):
        ai, bi, ci = flat_a[i], flat_b[i], flat_c[i]
        if abs(ai) < 1e-18:
            continue
        disc = bi * bi - 4.0 * ai * ci
        if disc < 0.0:
            disc = 0.0
        sq = np.sqrt(disc)
        for root in ((-bi + sq) / (2.0 * ai), (-bi - sq) / (2.0 * ai)):
            if root > eps and root > best:
                best = root
    return float(best)


# ---------------------------------------------------------------------------
# numba twins

_BACKEND = "numpy"

njit = None
if not _FORCE_NUMPY:
    try:
        from numba import njit
    except ImportError:
        njit = None

if njit is not None:

    @njit(cache=True)
    def _nb_occlusion_blocked(origins, direction, boxes, clearance):  # pragma: no cover - jit
        m = boxes.shape[0]
        n = origins.shape[0]
        if m == 0 or n == 0:
            return False
        for bi in range(m):
            lo0 = boxes[bi, 0] + clearance * (1.0 - abs(direction[0]))
            lo1 = boxes[bi, 1] + clearance * (1.0 - abs(direction[1]))
            lo2 = boxes[bi, 2] + clearance * (1.0 - abs(direction[2]))
            hi0 = boxes[bi, 3] - clearance * (1.0 - abs(direction[0]))
            hi1 = boxes[bi, 4] - clearance * (1.0 - abs(direction[1]))
            hi2 = boxes[bi, 5] - clearance * (1.0 - abs(direction[2]))
            if lo0 > hi0 or lo1 > hi1 or lo2 > hi2:
                continue
            for ri in range(n):
                t0 = clearance
                t1 = np.inf
                alive = True
                for axis in range(3):
                    if axis == 0:
                        lo, hi = lo0, hi0
                    elif axis == 1:
                        lo, hi = lo1, hi1
                    else:
                        lo, hi = lo2, hi2
                    p = origins[ri, axis]
                    d = direction[axis]
                    if abs(d) > 1e-12:
                        ta = (lo - p) / d
                        tb = (hi - p) / d
                        if ta > tb:
                            ta, tb = tb, ta
                        if ta > t0:
                            t0 = ta
                        if tb < t1:
                            t1 = tb
                    else:
                        if p < lo or p > hi:
                            alive = False
                            break
                if alive and t0 <= t1:
                    return True
        return False

    @njit(cache=True)
    def _nb_grid_normals(grid):  # pragma: no cover - jit
        rows, cols = grid.shape[0], grid.shape[1]
        out = np.empty((rows, cols, 3))
        for i in range(rows):
            for j in range(cols):
                i0 = i - 1 if i > 0 else i
                i1 = i + 1 if i < rows - 1 else i
                j0 = j - 1 if j > 0 else j
                j1 = j + 1 if j < cols - 1 else j
                du0 = grid[i1, j, 0] - grid[i0, j, 0]
                du1 = grid[i1, j, 1] - grid[i0, j, 1]
                du2 = grid[i1, j, 2] - grid[i0, j, 2]
                dv0 = grid[i, j1, 0] - grid[i, j0, 0]
                dv1 = grid[i, j1, 1] - grid[i, j0, 1]
                dv2 = grid[i, j1, 2] - grid[i, j0, 2]
                nx = du1 * dv2 - du2 * dv1
                ny = du2 * dv0 - du0 * dv2
                nz = du0 * dv1 - du1 * dv0
                norm = (nx * nx + ny * ny + nz * nz) ** 0.5
                if norm == 0.0:
                    norm = 1.0
                out[i, j, 0] = nx / norm
                out[i, j, 1] = ny / norm
                out[i, j, 2] = nz / norm
        return out

    @njit(cache=True)
    def _nb_max_concave_curvature(grid, normals, eps):  # pragma: no cover - jit
        rows, cols = grid.shape[0], grid.shape[1]
        best = 0.0
        if rows < 3 or cols < 3:
            return best
        for i in range(1, rows - 1):
            for j in range(1, cols - 1):
                E = 0.0
                F = 0.0
                G = 0.0
                L = 0.0
                M = 0.0
                N = 0.0
                for k in range(3):
                    pu = 0.5 * (grid[i + 1, j, k] - grid[i - 1, j, k])
                    pv = 0.5 * (grid[i, j + 1, k] - grid[i, j - 1, k])
                    puu = grid[i + 1, j, k] - 2.0 * grid[i, j, k] + grid[i - 1, j, k]
                    pvv = grid[i, j + 1, k] - 2.0 * grid[i, j, k] + grid[i, j - 1, k]
                    puv = 0.25 * (
                        grid[i + 1, j + 1, k]
                        - grid[i + 1, j - 1, k]
                        - grid[i - 1, j + 1, k]
                        + grid[i - 1, j - 1, k]
                    )
                    nk = normals[i, j, k]
                    E += pu * pu
                    F += pu * pv
                    G += pv * pv
                    L += puu * nk
                    M += puv * nk
                    N += pvv * nk
                a = E * G - F * F
                b = -(E * N + G * L - 2.0 * F * M)
                c = L * N - M * M
                if abs(a) < 1e-18:
                    continue
                disc = b * b - 4.0 * a * c
                if disc < 0.0:
                    disc = 0.0
                sq = disc ** 0.5
                r1 = (-b + sq) / (2.0 * a)
                r2 = (-b - sq) / (2.0 * a)
                if r1 > eps and r1 > best:
                    best = r1
                if r2 > eps and r2 > best:
                    best = r2
        return best

    _BACKEND = "numba"


def backend_name() -> str:
    return _BACKEND


def occlusion_blocked(origins: np.ndarray, direction: np.ndarray,
                      boxes: np.ndarray, clearance: float) -> bool:
    origins = np.ascontiguousarray(origins, dtype=np.float64)
    direction = np.ascontiguousarray(direction, dtype=np.float64)
    boxes = np.ascontiguousarray(boxes, dtype=np.float64).reshape(-1, 6)
    if _BACKEND == "numba":
        return bool(_nb_occlusion_blocked(origins, direction, boxes, clearance))
    return _np_occlusion_blocked(origins, direction, boxes, clearance)


def grid_normals(grid: np.ndarray) -> np.ndarray:
    grid = np.ascontiguousarray(grid, dtype=np.float64)
    if _BACKEND == "numba":
        return _nb_grid_normals(grid)
    return _np_grid_normals(grid)


def max_concave_curvature(grid: np.ndarray, normals: np.ndarray,
                          eps: float = 1e-6) -> float:
    grid = np.ascontiguousarray(grid, dtype=np.float64)
    normals = np.ascontiguousarray(normals, dtype=np.float64)
    if _BACKEND == "numba":
        return float(_nb_max_concave_curvature(grid, normals, eps))
    return _np_max_concave_curvature(grid, normals, eps)
