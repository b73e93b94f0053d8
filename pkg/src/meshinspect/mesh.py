"""Triangle meshes in model-local meters: OBJ ingestion, bounds, distance queries.

Meshes are georeferenced by the reconstruction pipeline, so local units are
real-world meters (a configurable multiplier covers non-metric sources).
Only the geometry subset of OBJ is read: ``v`` and ``f`` records.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np


class MeshError(Exception):
    """Base class for mesh failures."""


class ParseError(MeshError):
    """OBJ input could not be interpreted. ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyMesh(MeshError):
    """An operation needed geometry and the mesh has none."""


@dataclass
class TriangleMesh:
    """Indexed triangle soup. Immutable after construction."""

    vertices: np.ndarray  # (n, 3) float64, model-local meters
    triangles: np.ndarray  # (m, 3) int64, indices into vertices
    source_name: str = ""

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(self.vertices, dtype=np.float64).reshape(-1, 3)
        self.triangles = np.ascontiguousarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        if len(self.triangles) and (
            self.triangles.min() < 0 or self.triangles.max() >= len(self.vertices)
        ):
            raise ValueError("triangle index out of range")
        self.vertices.flags.writeable = False
        self.triangles.flags.writeable = False

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    def triangle_corners(self, i: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        ia, ib, ic = self.triangles[i]
        return self.vertices[ia], self.vertices[ib], self.vertices[ic]

    def scaled(self, factor: float) -> "TriangleMesh":
        """Copy with vertices multiplied by ``factor`` (unit conversion)."""
        if factor == 1.0:
            return self
        return TriangleMesh(self.vertices * factor, self.triangles, self.source_name)


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned bounding box, componentwise ``min_corner <= max_corner``."""

    min_corner: np.ndarray
    max_corner: np.ndarray

    def extents(self) -> np.ndarray:
        return self.max_corner - self.min_corner

    def diagonal(self) -> float:
        return float(np.linalg.norm(self.extents()))

    def contains(self, p: np.ndarray) -> bool:
        return bool(np.all(p >= self.min_corner) and np.all(p <= self.max_corner))


def parse_obj(source: str | IO[str] | Iterable[str], source_name: str = "") -> TriangleMesh:
    """Parse OBJ-style text into a :class:`TriangleMesh`.

    Only ``v x y z`` and ``f i j k [l ...]`` records are interpreted; ``vn``,
    ``vt``, comments and blank lines are skipped. Face indices may be 1-based
    positive or negative (counted back from the vertices seen so far);
    ``i/j/k`` forms use only the vertex index. Faces with more than three
    vertices are fan-triangulated from the first vertex.

    Raises :class:`ParseError` with a 1-based line number on zero or
    out-of-range indices, faces with fewer than three vertices, and
    non-numeric coordinates.
    """
    if isinstance(source, str):
        lines: Iterable[str] = source.splitlines()
    else:
        lines = source

    vertices: list[tuple[float, float, float]] = []
    triangles: list[tuple[int, int, int]] = []

    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        key = tokens[0]
        if key == "v":
            if len(tokens) < 4:
                raise ParseError("vertex record needs 3 coordinates", lineno)
            try:
                x, y, z = float(tokens[1]), float(tokens[2]), float(tokens[3])
            except ValueError:
                raise ParseError("non-numeric vertex coordinate", lineno) from None
            vertices.append((x, y, z))
        elif key == "f":
            refs = tokens[1:]
            if len(refs) < 3:
                raise ParseError("face with fewer than 3 vertices", lineno)
            idx = [_resolve_face_index(ref, len(vertices), lineno) for ref in refs]
            for k in range(1, len(idx) - 1):
                triangles.append((idx[0], idx[k], idx[k + 1]))
        # everything else (vn, vt, o, g, s, usemtl, mtllib, ...) is skipped

    return TriangleMesh(
        np.array(vertices, dtype=np.float64).reshape(-1, 3),
        np.array(triangles, dtype=np.int64).reshape(-1, 3),
        source_name,
    )


def _resolve_face_index(ref: str, vertex_count: int, lineno: int) -> int:
    head = ref.split("/", 1)[0]
    try:
        value = int(head)
    except ValueError:
        raise ParseError(f"non-numeric face index {head!r}", lineno) from None
    if value == 0:
        raise ParseError("zero face index", lineno)
    resolved = vertex_count + value if value < 0 else value - 1
    if not 0 <= resolved < vertex_count:
        raise ParseError(f"face index {value} out of range", lineno)
    return resolved


def mesh_to_obj(mesh: TriangleMesh) -> str:
    """Serialize the supported OBJ subset. Round-trips through :func:`parse_obj`."""
    out = []
    for x, y, z in mesh.vertices:
        out.append(f"v {float(x)!r} {float(y)!r} {float(z)!r}")
    for a, b, c in mesh.triangles:
        out.append(f"f {a + 1} {b + 1} {c + 1}")
    return "\n".join(out) + "\n"


def load_obj(path: str, meters_per_unit: float = 1.0) -> TriangleMesh:
    """Read an OBJ file, converting coordinates to meters."""
    with open(path, "r", encoding="utf-8") as f:
        mesh = parse_obj(f, source_name=path)
    return mesh.scaled(meters_per_unit)


def mesh_aabb(mesh: TriangleMesh) -> Aabb:
    """Componentwise vertex extrema. Raises :class:`EmptyMesh` when there are none."""
    if mesh.vertex_count == 0:
        raise EmptyMesh("mesh has no vertices")
    return Aabb(mesh.vertices.min(axis=0), mesh.vertices.max(axis=0))


def points_segment_distance(points: np.ndarray, s0: np.ndarray, s1: np.ndarray) -> np.ndarray:
    """Distance from each row of ``points`` to the closed segment ``s0 s1``."""
    p = np.atleast_2d(np.asarray(points, dtype=np.float64))
    s0 = np.asarray(s0, dtype=np.float64)
    d = np.asarray(s1, dtype=np.float64) - s0
    dd = float(d @ d)
    if dd == 0.0:
        return np.linalg.norm(p - s0, axis=1)
    t = np.clip((p - s0) @ d / dd, 0.0, 1.0)
    return np.linalg.norm(p - (s0 + t[:, None] * d), axis=1)


def points_triangle_distance(
    points: np.ndarray, a: np.ndarray, b: np.ndarray, c: np.ndarray
) -> np.ndarray:
    """Distance from each row of ``points`` to the closed triangle ``a b c``.

    Degenerate triangles collapse to their edges, so photogrammetric slivers
    and repeated vertices still get exact distances instead of NaNs.
    """
    p = np.atleast_2d(np.asarray(points, dtype=np.float64))
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)

    d_edge = np.minimum(
        points_segment_distance(p, a, b),
        np.minimum(points_segment_distance(p, b, c), points_segment_distance(p, c, a)),
    )

    ab = b - a
    ac = c - a
    normal = np.cross(ab, ac)
    n2 = float(normal @ normal)
    abab = float(ab @ ab)
    acac = float(ac @ ac)
    abac = float(ab @ ac)
    det = abab * acac - abac * abac
    if n2 <= 0.0 or det <= 0.0:
        return d_edge

    ap = p - a
    d_ab = ap @ ab
    d_ac = ap @ ac
    u = (acac * d_ab - abac * d_ac) / det
    v = (abab * d_ac - abac * d_ab) / det
    inside = (u >= 0.0) & (v >= 0.0) & (u + v <= 1.0)
    d_plane = np.abs(ap @ normal) / np.sqrt(n2)
    return np.where(inside, np.minimum(d_plane, d_edge), d_edge)


def point_triangle_distance(p: np.ndarray, tri: np.ndarray) -> float:
    """Scalar convenience wrapper: distance from ``p`` to triangle ``tri`` (3x3)."""
    tri = np.asarray(tri, dtype=np.float64).reshape(3, 3)
    return float(points_triangle_distance(np.asarray(p, dtype=np.float64)[None, :], *tri)[0])
