"""Snapping grid: lattice points retained near the mesh surface.

A regular lattice is fitted over the mesh bounding box and every candidate
farther than ``point_radius`` from all triangles is dropped. Marker placement
queries the retained points and snaps to the nearest one inside
``snap_radius``. Everything is model-local, so the effective world-space snap
radius follows the model scale automatically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from meshinspect.mesh import Aabb, EmptyMesh, TriangleMesh, mesh_aabb, points_triangle_distance


class NonPositiveParameter(ValueError):
    """A grid parameter that must be positive was not."""


@dataclass
class SnapGrid:
    """Retained lattice points in deterministic x-major, then y, then z order."""

    points: np.ndarray  # (k, 3) float64, model-local meters
    step: float
    point_radius: float
    snap_radius: float

    def __post_init__(self):
        self.points = np.ascontiguousarray(self.points, dtype=np.float64).reshape(-1, 3)
        self.points.flags.writeable = False

    def __len__(self) -> int:
        return len(self.points)


def lattice_axes(aabb: Aabb, step: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-axis lattice coordinates fitted to the box.

    Each axis is divided into ``round(extent / step)`` equal intervals so the
    box faces (and corners) are always lattice-aligned; the effective spacing
    is the nearest whole subdivision of the extent. Zero-extent axes collapse
    to a single plane.
    """
    if step <= 0.0:
        raise NonPositiveParameter("step must be > 0")
    axes = []
    for lo, hi in zip(aabb.min_corner, aabb.max_corner):
        extent = float(hi) - float(lo)
        if extent <= 0.0:
            axes.append(np.array([float(lo)], dtype=np.float64))
            continue
        subdivisions = max(1, round(extent / step))
        axes.append(np.linspace(float(lo), float(hi), subdivisions + 1))
    return axes[0], axes[1], axes[2]


def lattice_points(axes: tuple[np.ndarray, np.ndarray, np.ndarray]) -> np.ndarray:
    """All lattice candidates, x varying slowest, then y, then z."""
    gx, gy, gz = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([gx.ravel(), gy.ravel(), gz.ravel()])


def prune_candidates(
    candidates: np.ndarray, mesh: TriangleMesh, point_radius: float
) -> np.ndarray:
    """Brute-force pruning: keep candidates within ``point_radius`` of any triangle.

    This is the defining computation (all candidates against all triangles);
    :func:`generate_snap_grid` must produce a set-equal result. Kept separate
    so tests can run it over forced candidate sets.
    """
    if point_radius <= 0.0:
        raise NonPositiveParameter("point_radius must be > 0")
    if mesh.triangle_count == 0:
        raise EmptyMesh("cannot prune against a mesh with no triangles")
    pts = np.atleast_2d(np.asarray(candidates, dtype=np.float64))
    keep = np.zeros(len(pts), dtype=bool)
    for i in range(mesh.triangle_count):
        a, b, c = mesh.triangle_corners(i)
        todo = ~keep
        if not todo.any():
            break
        d = points_triangle_distance(pts[todo], a, b, c)
        keep[np.flatnonzero(todo)[d <= point_radius]] = True
    return pts[keep]


def generate_snap_grid(
    mesh: TriangleMesh, step: float, point_radius: float, snap_radius: float
) -> SnapGrid:
    """Build the grid by lattice-vs-surface collision pruning.

    Uses the lattice itself as a uniform spatial index: each triangle only
    tests candidates inside its bounding box inflated by ``point_radius``.
    The retained set (points and order) is identical to
    :func:`prune_candidates` over the full lattice.
    """
    if step <= 0.0 or point_radius <= 0.0 or snap_radius <= 0.0:
        raise NonPositiveParameter("step, point_radius and snap_radius must be > 0")
    if mesh.triangle_count == 0 or mesh.vertex_count == 0:
        raise EmptyMesh("snap grid needs a mesh with at least one triangle")

    axes = lattice_axes(mesh_aabb(mesh), step)
    ax, ay, az = axes
    nx, ny, nz = len(ax), len(ay), len(az)
    keep = np.zeros((nx, ny, nz), dtype=bool)

    for i in range(mesh.triangle_count):
        a, b, c = mesh.triangle_corners(i)
        tri = np.stack([a, b, c])
        lo = tri.min(axis=0) - point_radius
        hi = tri.max(axis=0) + point_radius
        sx = slice(np.searchsorted(ax, lo[0]), np.searchsorted(ax, hi[0], side="right"))
        sy = slice(np.searchsorted(ay, lo[1]), np.searchsorted(ay, hi[1], side="right"))
        sz = slice(np.searchsorted(az, lo[2]), np.searchsorted(az, hi[2], side="right"))
        if sx.start >= sx.stop or sy.start >= sy.stop or sz.start >= sz.stop:
            continue
        sub = keep[sx, sy, sz]
        todo = ~sub
        if not todo.any():
            continue
        gx, gy, gz = np.meshgrid(ax[sx], ay[sy], az[sz], indexing="ij")
        pts = np.column_stack([gx[todo], gy[todo], gz[todo]])
        hit = points_triangle_distance(pts, a, b, c) <= point_radius
        sub[todo] = hit
        keep[sx, sy, sz] = sub

    retained = lattice_points(axes)[keep.ravel()]
    return SnapGrid(retained, step=step, point_radius=point_radius, snap_radius=snap_radius)


def snap_query(grid: SnapGrid, p: np.ndarray) -> tuple[int, np.ndarray] | None:
    """Nearest retained point within ``snap_radius`` of ``p``, or None.

    Exact distance ties resolve to the lowest stored index.
    """
    if len(grid.points) == 0:
        return None
    p = np.asarray(p, dtype=np.float64)
    deltas = grid.points - p
    d2 = np.einsum("ij,ij->i", deltas, deltas)
    i = int(np.argmin(d2))
    if float(np.sqrt(d2[i])) <= grid.snap_radius:
        return i, grid.points[i].copy()
    return None


def dump_grid(grid: SnapGrid) -> str:
    """Text dump: one ``x y z`` line per retained point, lattice order, 6 decimals."""
    return "".join(f"{x:.6f} {y:.6f} {z:.6f}\n" for x, y, z in grid.points)


def write_grid_dump(grid: SnapGrid, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_grid(grid))
