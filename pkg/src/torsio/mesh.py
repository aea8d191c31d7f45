"""Triangulations of convex polygons for the FEM solver.

Two strategies: a quasi-uniform Delaunay mesh over a hexagonal lattice
for general polygons, and an n^2 structured subdivision for triangles
(which stays well-behaved for the extremely anisotropic thin triangles
where a quasi-uniform mesh would be astronomically large).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay

from .errors import MeshFailure
from .kernels import tri_geometry
from .offset import chebyshev_center, halfplanes
from .polygon import ConvexPolygon, area, edge_lengths

# Lattice points closer to the boundary than this fraction of h are
# dropped; the boundary ring fills the gap without creating slivers.
_BOUNDARY_MARGIN = 0.45


@dataclass(frozen=True)
class TriMesh:
    """Conforming P1 triangulation with boundary markers."""

    nodes: np.ndarray  # (n, 2) float64
    triangles: np.ndarray  # (m, 3) int32, positively oriented
    boundary: np.ndarray  # (n,) bool
    h: float  # resolution parameter of the build

    def __post_init__(self):
        for name, arr in (("nodes", self.nodes), ("triangles", self.triangles),
                          ("boundary", self.boundary)):
            a = np.ascontiguousarray(arr)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def to_json_obj(self) -> dict:
        return {
            "nodes": self.nodes.tolist(),
            "triangles": self.triangles.tolist(),
            "boundary": self.boundary.astype(int).tolist(),
            "h": self.h,
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_obj(), fh)


def _orient_ccw(nodes: np.ndarray, tris: np.ndarray) -> np.ndarray:
    p = nodes[tris]
    det = ((p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
           - (p[:, 1, 1] - p[:, 0, 1]) * (p[:, 2, 0] - p[:, 0, 0]))
    flipped = tris.copy()
    neg = det < 0
    flipped[neg, 1], flipped[neg, 2] = tris[neg, 2], tris[neg, 1]
    return flipped


def _min_angle_deg(nodes: np.ndarray, tris: np.ndarray) -> float:
    p = nodes[tris]
    angles = []
    for i in range(3):
        a = p[:, (i + 1) % 3] - p[:, i]
        b = p[:, (i + 2) % 3] - p[:, i]
        cosv = (a * b).sum(axis=1) / (np.linalg.norm(a, axis=1)
                                      * np.linalg.norm(b, axis=1))
        angles.append(np.degrees(np.arccos(np.clip(cosv, -1.0, 1.0))))
    return float(np.min(angles))


def _boundary_ring(poly: ConvexPolygon, h: float) -> np.ndarray:
    pts = []
    v = poly.vertices
    lengths = edge_lengths(poly)
    for i in range(poly.n):
        a, b = v[i], v[(i + 1) % poly.n]
        k = max(1, int(math.ceil(lengths[i] / h)))
        frac = np.arange(k) / k
        pts.append(a + frac[:, None] * (b - a))
    return np.vstack(pts)


def triangulate(poly: ConvexPolygon, h: float) -> TriMesh:
    """Quasi-uniform boundary-conforming Delaunay mesh, max edge <= h.

    Requires h below the inradius so the lattice actually populates the
    interior.  Deterministic for fixed input.
    """
    _, r_in = chebyshev_center(poly)
    if not 0.0 < h < r_in:
        raise MeshFailure(f"h={h} must lie in (0, inradius={r_in:.6g})")

    # Lattice pitch below h: the longest Delaunay edges bridge the
    # boundary ring and the first lattice row at ~1.4 pitch.
    pitch = h / 1.5
    ring = _boundary_ring(poly, pitch)
    lo = poly.vertices.min(axis=0)
    hi = poly.vertices.max(axis=0)
    dy = pitch * math.sqrt(3.0) / 2.0
    ys = np.arange(lo[1] + 0.5 * dy, hi[1], dy)
    rows = []
    for j, y in enumerate(ys):
        x0 = lo[0] + (0.25 + 0.5 * (j % 2)) * pitch
        xs = np.arange(x0, hi[0], pitch)
        rows.append(np.column_stack((xs, np.full(len(xs), y))))
    interior = np.vstack(rows) if rows else np.empty((0, 2))
    if len(interior):
        normals, offsets = halfplanes(poly)
        dist = (offsets[None, :] - interior @ normals.T).min(axis=1)
        interior = interior[dist >= _BOUNDARY_MARGIN * pitch]

    nodes = np.vstack((ring, interior))
    tris = _orient_ccw(nodes, Delaunay(nodes).simplices.astype(np.int32))

    # qhull can emit degenerate slivers from collinear boundary runs.
    areas, _, _ = tri_geometry(nodes, tris.astype(np.int32))
    keep = areas > 1e-14 * area(poly)
    tris = tris[keep]

    boundary = np.zeros(len(nodes), dtype=bool)
    boundary[: len(ring)] = True
    mesh = TriMesh(nodes, tris.astype(np.int32), boundary, h)
    _validate(mesh, poly, min_angle=1.0)
    return mesh


def structured_triangle_mesh(poly: ConvexPolygon, n: int) -> TriMesh:
    """Uniform n^2-element subdivision of a triangle.

    All elements are similar to the parent triangle, so the mesh is as
    anisotropic as the domain itself; that is exactly what makes thin
    triangles tractable.
    """
    if poly.n != 3:
        raise MeshFailure("structured subdivision needs a triangle")
    if n < 1:
        raise MeshFailure("subdivision count must be positive")
    v0, v1, v2 = poly.vertices
    nodes = []
    index = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            index[(i, j)] = len(nodes)
            nodes.append(v0 + (v1 - v0) * (i / n) + (v2 - v0) * (j / n))
    tris = []
    for i in range(n):
        for j in range(n - i):
            a, b, c = index[(i, j)], index[(i + 1, j)], index[(i, j + 1)]
            tris.append((a, b, c))
            if i + j < n - 1:
                tris.append((index[(i + 1, j)], index[(i + 1, j + 1)], c))
    nodes = np.asarray(nodes)
    boundary = np.zeros(len(nodes), dtype=bool)
    for (i, j), idx in index.items():
        if i == 0 or j == 0 or i + j == n:
            boundary[idx] = True
    h = float(edge_lengths(poly).max() / n)
    mesh = TriMesh(nodes, np.asarray(tris, dtype=np.int32), boundary, h)
    _validate(mesh, poly, min_angle=None)
    return mesh


def _validate(mesh: TriMesh, poly: ConvexPolygon,
              min_angle: float | None) -> None:
    areas, _, _ = tri_geometry(mesh.nodes, mesh.triangles)
    if np.any(areas <= 0.0):
        raise MeshFailure("non-positive element orientation")
    total = float(areas.sum())
    target = area(poly)
    if abs(total - target) > 1e-9 * target:
        raise MeshFailure(f"element areas sum to {total}, polygon has {target}")
    if min_angle is not None and _min_angle_deg(mesh.nodes, mesh.triangles) < min_angle:
        raise MeshFailure("sliver element below minimum angle threshold")
    if not mesh.boundary.any():
        raise MeshFailure("no boundary nodes flagged")
