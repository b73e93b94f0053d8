"""Synthetic meshes for fixtures, demos and benchmarks."""

from __future__ import annotations

import numpy as np

from meshinspect.mesh import TriangleMesh

# face quads of a box whose vertex index is x*4 + y*2 + z, outward winding
_BOX_QUADS = (
    (0, 1, 3, 2),  # x = 0
    (4, 6, 7, 5),  # x = 1
    (0, 4, 5, 1),  # y = 0
    (2, 3, 7, 6),  # y = 1
    (0, 2, 6, 4),  # z = 0
    (1, 5, 7, 3),  # z = 1
)


def box_mesh(
    width: float, height: float, depth: float, origin=(0.0, 0.0, 0.0)
) -> TriangleMesh:
    """Closed axis-aligned box: width along x, height along y, depth along z."""
    ox, oy, oz = (float(v) for v in origin)
    vertices = np.array(
        [
            [ox + x * width, oy + y * height, oz + z * depth]
            for x in (0, 1)
            for y in (0, 1)
            for z in (0, 1)
        ],
        dtype=np.float64,
    )
    triangles = []
    for a, b, c, d in _BOX_QUADS:
        triangles.append((a, b, c))
        triangles.append((a, c, d))
    return TriangleMesh(vertices, np.array(triangles, dtype=np.int64), "box")


def single_triangle(a, b, c) -> TriangleMesh:
    vertices = np.array([a, b, c], dtype=np.float64)
    return TriangleMesh(vertices, np.array([[0, 1, 2]], dtype=np.int64), "triangle")


def random_mesh(rng: np.random.Generator, max_triangles: int = 50, extent: float = 2.0) -> TriangleMesh:
    """Random triangle soup inside [0, extent]^3; may contain slivers."""
    n = int(rng.integers(1, max_triangles + 1))
    vertices = rng.uniform(0.0, extent, size=(3 * n, 3))
    triangles = np.arange(3 * n, dtype=np.int64).reshape(n, 3)
    return TriangleMesh(vertices, triangles, "random")
