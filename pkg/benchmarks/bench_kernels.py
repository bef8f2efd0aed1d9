"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each backend in a subprocess (the backend is fixed at import time by
OSEPLAN_PURE_NUMPY) and times the three hot kernels plus the transformation
phase of a 500-face part.

Usage: python benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time

import numpy as np

from oseplan import kernels
from oseplan.fixtures import scale_part
from oseplan.transform import transform_part

rng = np.random.default_rng(0)
results = {"backend": kernels.backend_name()}

# Occlusion: 64 rays x 500 boxes x 200 repetitions.
origins = rng.uniform(0, 100, size=(64, 3))
boxes = np.sort(rng.uniform(0, 100, size=(500, 2, 3)), axis=1).reshape(500, 6)
boxes = np.concatenate([boxes[:, 0:3], boxes[:, 3:6]], axis=1)
direction = np.array([0.0, 0.0, 1.0])
kernels.occlusion_blocked(origins, direction, boxes, 0.5)  # warm up / jit
start = time.perf_counter()
for _ in range(200):
    kernels.occlusion_blocked(origins, direction, boxes, 0.5)
results["occlusion_ms"] = (time.perf_counter() - start) / 200 * 1e3

# Normals and curvature on a 200 x 200 wavy grid, 20 repetitions.
u = np.linspace(0, 50, 200)
U, V = np.meshgrid(u, u, indexing="ij")
grid = np.stack([U, V, 3 * np.sin(U / 5) * np.cos(V / 7)], axis=-1)
normals = kernels.grid_normals(grid)
kernels.max_concave_curvature(grid, normals)
start = time.perf_counter()
for _ in range(20):
    normals = kernels.grid_normals(grid)
results["normals_ms"] = (time.perf_counter() - start) / 20 * 1e3
start = time.perf_counter()
for _ in range(20):
    kernels.max_concave_curvature(grid, normals)
results["curvature_ms"] = (time.perf_counter() - start) / 20 * 1e3

# Transformation phase of the 500-face lattice.
part = scale_part(10, 10)
start = time.perf_counter()
transform_part(part)
results["transform_500_s"] = time.perf_counter() - start

print(json.dumps(results))
"""


def run_backend(pure_numpy: bool) -> dict:
    env = dict(os.environ)
    env["OSEPLAN_PURE_NUMPY"] = "1" if pure_numpy else "0"
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    rows = [run_backend(pure_numpy=False), run_backend(pure_numpy=True)]
    metrics = ["occlusion_ms", "normals_ms", "curvature_ms", "transform_500_s"]
    header = f"{'metric':<18}" + "".join(f"{r['backend']:>12}" for r in rows) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for metric in metrics:
        values = [row[metric] for row in rows]
        speedup = values[1] / values[0] if values[0] else float("inf")
        unit = "ms" if metric.endswith("_ms") else "s"
        cells = "".join(f"{v:>10.2f}{unit}" for v in values)
        print(f"{metric:<18}{cells}{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
