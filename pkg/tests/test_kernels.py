"""Kernel behavior plus numba/numpy backend agreement."""

import numpy as np

from oseplan import kernels
from oseplan.kernels import (
    _np_grid_normals,
    _np_max_concave_curvature,
    _np_occlusion_blocked,
)


def bore_grid(radius=5.0, n=12):
    z = np.linspace(0, 10, n)
    th = np.linspace(0.2, 1.2, n)
    Z, T = np.meshgrid(z, th, indexing="ij")
    return np.stack([radius * np.cos(T), radius * np.sin(T), Z], axis=-1)


def test_thin_roof_blocks_square_on():
    origins = np.array([[0.0, 0.0, 0.0]])
    d = np.array([0.0, 0.0, 1.0])
    roof = np.array([[-5.0, -5.0, 10.0, 5.0, 5.0, 10.0]])
    assert kernels.occlusion_blocked(origins, d, roof, 0.5)


def test_thin_wall_alongside_does_not_block():
    origins = np.array([[0.0, 0.0, 0.0]])
    d = np.array([0.0, 0.0, 1.0])
    wall = np.array([[-0.3, -5.0, 0.0, 0.3, 5.0, 40.0]])
    assert not kernels.occlusion_blocked(origins, d, wall, 0.5)


def test_thin_wall_blocks_its_own_normal():
    wall = np.array([[-0.3, -5.0, 0.0, 0.3, 5.0, 40.0]])
    origins = np.array([[-3.0, 0.0, 20.0]])
    assert kernels.occlusion_blocked(origins, np.array([1.0, 0.0, 0.0]), wall, 0.5)


def test_hit_within_clearance_ignored():
    origins = np.array([[0.0, 0.0, 0.0]])
    d = np.array([0.0, 0.0, 1.0])
    slab = np.array([[-5.0, -5.0, 0.2, 5.0, 5.0, 0.2]])
    assert not kernels.occlusion_blocked(origins, d, slab, 0.5)
    slab_beyond = np.array([[-5.0, -5.0, 0.8, 5.0, 5.0, 0.8]])
    assert kernels.occlusion_blocked(origins, d, slab_beyond, 0.5)


def test_plane_normals_unit_z():
    u = np.linspace(0, 1, 4)
    U, V = np.meshgrid(u, u, indexing="ij")
    grid = np.stack([U, V, np.zeros_like(U)], axis=-1)
    normals = kernels.grid_normals(grid)
    assert np.allclose(normals, [0.0, 0.0, 1.0])


def test_concave_curvature_of_bore():
    grid = bore_grid()
    normals = kernels.grid_normals(grid)
    kappa = kernels.max_concave_curvature(grid, normals)
    assert abs(1.0 / kappa - 5.0) / 5.0 < 0.02


def test_convex_surface_has_no_concave_curvature():
    grid = bore_grid().copy()
    # Reverse a parameter direction to flip the normals outward.
    grid = grid[:, ::-1, :]
    normals = kernels.grid_normals(grid)
    assert kernels.max_concave_curvature(grid, normals) == 0.0


def test_backends_agree():
    rng = np.random.default_rng(11)
    grid = bore_grid() + rng.normal(scale=1e-3, size=bore_grid().shape)
    normals_np = _np_grid_normals(grid)
    normals = kernels.grid_normals(grid)
    assert np.allclose(normals, normals_np, atol=1e-12)

    kappa_np = _np_max_concave_curvature(grid, normals_np, 1e-6)
    kappa = kernels.max_concave_curvature(grid, normals)
    assert abs(kappa - kappa_np) < 1e-9

    origins = rng.uniform(-10, 10, size=(40, 3))
    boxes = np.sort(rng.uniform(-12, 12, size=(30, 6)).reshape(30, 2, 3), axis=1)
    boxes = boxes.reshape(30, 6)[:, [0, 1, 2, 3, 4, 5]]
    boxes = np.concatenate([boxes[:, :3], boxes[:, 3:]], axis=1)
    for d in ([0, 0, 1.0], [1.0, 0, 0], [0.6, 0.0, 0.8]):
        d = np.asarray(d)
        got = kernels.occlusion_blocked(origins, d, boxes, 0.5)
        want = _np_occlusion_blocked(origins, d, boxes, 0.5)
        assert got == want
