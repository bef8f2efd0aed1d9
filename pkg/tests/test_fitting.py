"""Fitting primitives against independent numerical oracles."""

import numpy as np
import pytest
from scipy.optimize import minimize

from oseplan import fitting
from oseplan.fixtures import cone_patch, cylinder_patch, hypar_patch, torus_patch


def grid_on_plane(n=5):
    u = np.linspace(0, 10, n)
    U, V = np.meshgrid(u, u, indexing="ij")
    return np.stack([U, V, np.zeros_like(U)], axis=-1)


def test_plane_z0():
    fit = fitting.fit_plane(grid_on_plane())
    assert abs(abs(fit.normal[2]) - 1.0) < 1e-12
    assert fit.residual == 0.0


def test_plane_x_plus_y_plus_z():
    u = np.linspace(0, 5, 6)
    U, V = np.meshgrid(u, u, indexing="ij")
    grid = np.stack([U, V, 1.0 - U - V], axis=-1)
    fit = fitting.fit_plane(grid)
    expected = np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0)
    assert min(np.linalg.norm(fit.normal - expected),
               np.linalg.norm(fit.normal + expected)) < 1e-9
    assert fit.residual < 1e-9


def test_plane_perturbed_matches_eigen_oracle():
    grid = grid_on_plane(6)
    bump = 0.1 * ((np.indices((6, 6)).sum(axis=0) % 2) * 2 - 1)
    grid[:, :, 2] += bump
    fit = fitting.fit_plane(grid)

    # Independent oracle: smallest eigenvalue of the centered scatter matrix.
    pts = grid.reshape(-1, 3)
    centered = pts - pts.mean(axis=0)
    scatter = centered.T @ centered
    eigenvalues = np.linalg.eigh(scatter)[0]
    oracle = np.sqrt(eigenvalues[0] / len(pts))
    assert abs(fit.residual - oracle) < 1e-12


def test_plane_collinear_is_underdetermined():
    line = np.zeros((2, 3, 3))
    line[:, :, 0] = [[0, 1, 2], [3, 4, 5]]
    with pytest.raises(fitting.FitError, match="underdetermined"):
        fitting.fit_plane(line)


def test_cylinder_exact_arc():
    fit = fitting.fit_cylinder(cylinder_patch(radius=5.0))
    assert abs(fit.radius - 5.0) < 1e-6
    assert fit.residual < 1e-6
    assert abs(abs(fit.axis_direction[2]) - 1.0) < 1e-6


def test_cylinder_on_plane_fails_or_exceeds_tolerance():
    try:
        fit = fitting.fit_cylinder(grid_on_plane())
    except fitting.FitError:
        return
    assert fit.residual > 1e-3 or fit.radius > 1e5


def test_noisy_cylinder_against_independent_oracle():
    rng = np.random.default_rng(42)
    grid = cylinder_patch(radius=5.0, n=14)
    grid = grid + rng.normal(scale=0.01, size=grid.shape)
    fit = fitting.fit_cylinder(grid)
    assert abs(fit.radius - 5.0) < 0.05

    # Independent oracle: Nelder-Mead over (axis angles, center xy, radius)
    # minimizing the same orthogonal distances, written separately.
    pts = grid.reshape(-1, 3)

    def cost(params):
        theta, phi, cx, cy, r = params
        axis = np.array([
            np.sin(theta) * np.cos(phi),
            np.sin(theta) * np.sin(phi),
            np.cos(theta),
        ])
        rel = pts - np.array([cx, cy, 0.0])
        radial = rel - np.outer(rel @ axis, axis)
        return np.mean((np.linalg.norm(radial, axis=1) - r) ** 2)

    oracle = minimize(cost, x0=np.array([0.05, 0.0, 0.1, -0.1, 4.8]),
                      method="Nelder-Mead",
                      options={"maxiter": 4000, "xatol": 1e-10, "fatol": 1e-14})
    oracle_radius = oracle.x[4]
    assert abs(fit.radius - oracle_radius) < 5e-3
    assert fit.residual <= np.sqrt(oracle.fun) * (1.0 + 1e-3)


def test_cone_exact_patch():
    fit = fitting.fit_cone(cone_patch(half_angle_deg=20.0))
    assert abs(np.degrees(fit.half_angle) - 20.0) < 1e-6
    assert fit.residual < 1e-6
    assert np.linalg.norm(fit.apex) < 1e-5


def test_ruled_deviation_hypar_and_plane():
    dev, _ = fitting.ruled_deviation(hypar_patch())
    assert dev < 1e-9
    dev_plane, _ = fitting.ruled_deviation(grid_on_plane())
    assert dev_plane < 1e-12  # planes pass the ruled test; precedence excludes them


def test_sweep_collapse_torus_against_analytic_oracle():
    grid = torus_patch(spine_radius=10.0, tube_radius=3.0, n=14)
    fit = fitting.fit_constant_radius_sweep(grid)
    assert abs(fit.radius - 3.0) < 1e-3
    assert fit.spread < 1e-2

    # Oracle: offset along analytically exact torus normals collapses each
    # tube section onto the spine circle.
    th = np.linspace(0.1, np.pi / 2, 14)
    ph = np.linspace(np.pi, 1.5 * np.pi, 14)
    TH, PH = np.meshgrid(th, ph, indexing="ij")
    normals = np.stack([
        np.cos(PH) * np.cos(TH), np.cos(PH) * np.sin(TH), np.sin(PH)
    ], axis=-1)
    spine = grid - 3.0 * normals
    expected = np.stack([
        10.0 * np.cos(TH), 10.0 * np.sin(TH), np.zeros_like(TH)
    ], axis=-1)
    assert np.allclose(spine, expected, atol=1e-9)


def test_sweep_rejects_plane():
    with pytest.raises(fitting.FitError):
        fitting.fit_constant_radius_sweep(grid_on_plane())


def test_bump_fails_every_fit():
    from oseplan.fixtures import bump_patch

    grid = bump_patch()
    assert fitting.fit_plane(grid).residual > 1e-3
    for fitter in (fitting.fit_cylinder, fitting.fit_cone):
        try:
            fit = fitter(grid)
        except fitting.FitError:
            continue
        assert fit.residual > 1e-3
    dev, _ = fitting.ruled_deviation(grid)
    assert dev > 1e-3
    try:
        sweep = fitting.fit_constant_radius_sweep(grid)
    except fitting.FitError:
        sweep = None
    if sweep is not None:
        assert sweep.spread > 1e-2
