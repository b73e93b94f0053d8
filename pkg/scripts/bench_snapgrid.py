#!/usr/bin/env python3
"""Time indexed snap-grid generation against the brute-force definition.

Usage: python scripts/bench_snapgrid.py [--meshes 50] [--triangles 200] [--subdivisions 40]
"""

import argparse
import time

import numpy as np

from meshinspect.mesh import mesh_aabb
from meshinspect.shapes import random_mesh
from meshinspect.snapgrid import generate_snap_grid, lattice_axes, lattice_points, prune_candidates


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--meshes", type=int, default=50)
    parser.add_argument("--triangles", type=int, default=200)
    parser.add_argument("--subdivisions", type=int, default=40)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    indexed_total = brute_total = 0.0
    points_total = 0
    for _ in range(args.meshes):
        mesh = random_mesh(rng, max_triangles=args.triangles)
        step = float(mesh_aabb(mesh).extents().max()) / args.subdivisions
        r_p = step * 0.6

        t0 = time.perf_counter()
        grid = generate_snap_grid(mesh, step, r_p, 1.5 * step)
        indexed_total += time.perf_counter() - t0

        t0 = time.perf_counter()
        brute = prune_candidates(lattice_points(lattice_axes(mesh_aabb(mesh), step)), mesh, r_p)
        brute_total += time.perf_counter() - t0

        assert np.array_equal(grid.points, brute)
        points_total += len(grid)

    print(f"{args.meshes} meshes, up to {args.triangles} triangles, "
          f"{args.subdivisions}^3 lattices, {points_total} retained points")
    print(f"indexed:     {indexed_total:8.3f} s")
    print(f"brute force: {brute_total:8.3f} s")
    print(f"speedup:     {brute_total / indexed_total:8.2f}x")


if __name__ == "__main__":
    main()
