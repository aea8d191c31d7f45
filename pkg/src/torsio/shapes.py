"""Deterministic generators for the shape families used throughout.

Regular polygons, constant-area isosceles triangles, rectangle strips,
polygonal stadiums, circumscribed polygons from tangency angles, and a
seeded random-convex-polygon corpus generator (PCG64 via
``numpy.random.default_rng``; points drawn uniformly on the unit disk
with the polar square-root method, hulled).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull

from .errors import (GapTooWide, NoParallelSides, NotCircumscribed,
                     RangeError)
from .offset import offset_trace
from .polygon import ConvexPolygon, from_vertices, load


def regular_polygon(n: int, target_area: float) -> ConvexPolygon:
    """Regular n-gon with the requested area, centroid at the origin."""
    if n < 3:
        raise RangeError("regular polygon needs n >= 3")
    if target_area <= 0.0:
        raise RangeError("area must be positive")
    # area = n/2 * rho^2 sin(2 pi / n) for circumradius rho
    rho = math.sqrt(2.0 * target_area / (n * math.sin(2.0 * math.pi / n)))
    ang = np.pi / 2.0 + 2.0 * np.pi * np.arange(n) / n
    return from_vertices(rho * np.column_stack((np.cos(ang), np.sin(ang))))


def isosceles_T(k: float) -> ConvexPolygon:
    """Isosceles triangle with base k and fixed area sqrt(3)/4.

    The apex height is sqrt(3)/(2 k), so the equal sides have length
    sqrt(3/(4 k^2) + k^2/4); k = 1 gives the equilateral triangle.
    """
    if k <= 0.0:
        raise RangeError("base length must be positive")
    h = math.sqrt(3.0) / (2.0 * k)
    return from_vertices([(-k / 2.0, 0.0), (k / 2.0, 0.0), (0.0, h)])


def rectangle_strip(ell: float) -> ConvexPolygon:
    """Axis-aligned rectangle (-ell/2, ell/2) x (-1, 1)."""
    if ell <= 0.0:
        raise RangeError("length must be positive")
    return from_vertices([(-ell / 2, -1.0), (ell / 2, -1.0),
                          (ell / 2, 1.0), (-ell / 2, 1.0)])


def circumscribed_polygon(tangent_angles, radius: float) -> ConvexPolygon:
    """Polygon whose edges are tangent to the disk of given radius.

    tangent_angles are the tangency directions, strictly increasing in
    [0, 2 pi); every consecutive gap (including the wrap-around) must
    be < pi or the tangent lines fail to bound a polygon.
    """
    ang = np.asarray(tangent_angles, dtype=float)
    if radius <= 0.0:
        raise RangeError("radius must be positive")
    if len(ang) < 3:
        raise RangeError("need at least 3 tangency angles")
    if np.any(ang < 0.0) or np.any(ang >= 2.0 * np.pi) or np.any(np.diff(ang) <= 0):
        raise RangeError("angles must be strictly increasing in [0, 2 pi)")
    gaps = np.diff(np.append(ang, ang[0] + 2.0 * np.pi))
    if np.any(gaps >= np.pi - 1e-12):
        raise GapTooWide("a tangency gap reaches pi; adjacent tangents cannot meet")
    normals = np.column_stack((np.cos(ang), np.sin(ang)))
    n_next = np.roll(normals, -1, axis=0)
    denom = 1.0 + (normals * n_next).sum(axis=1)
    verts = radius * (normals + n_next) / denom[:, None]
    return from_vertices(verts)


def stadium(core: ConvexPolygon, ell: float) -> ConvexPolygon:
    """Split a circumscribed core along a symmetry line and pull apart.

    The core must be circumscribed (offset flow dies in a point) and
    own at least one pair of parallel edges; the cut runs through the
    incircle center perpendicular to that pair.  ell = 0 returns the
    core itself (up to normalization).
    """
    if ell < 0.0:
        raise RangeError("separation must be nonnegative")
    trace = offset_trace(core)
    if trace.extinction.kind != "point" or trace.r_first < trace.R * (1 - 1e-9):
        raise NotCircumscribed("core's incircle must touch every side")
    center = trace.extinction.where
    r = trace.R

    e = np.roll(core.vertices, -1, axis=0) - core.vertices
    dirs = e / np.linalg.norm(e, axis=1)[:, None]
    pair = None
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            if abs(dirs[i] @ dirs[j] + 1.0) < 1e-9:  # opposite directions
                pair = (i, j)
                break
        if pair:
            break
    if pair is None:
        raise NoParallelSides("core has no pair of parallel edges")

    # Rotate so the parallel pair is horizontal, incircle center at origin.
    d = dirs[pair[0]]
    rot = np.array([[d[0], d[1]], [-d[1], d[0]]])
    local = (core.vertices - center) @ rot.T

    shift = np.where(local[:, 0] < 0.0, -ell / 2.0, ell / 2.0)
    pts = local + np.column_stack((shift, np.zeros(len(local))))
    corners = np.array([[-ell / 2.0, -r], [ell / 2.0, -r],
                        [ell / 2.0, r], [-ell / 2.0, r]])
    return from_vertices(np.vstack((pts, corners)))


def random_convex(n: int, seed: int) -> ConvexPolygon:
    """Convex hull of n uniform points on the unit disk; reproducible."""
    if n < 3:
        raise RangeError("need at least 3 sample points")
    rng = np.random.default_rng(seed)
    while True:
        r = np.sqrt(rng.random(n))
        theta = 2.0 * np.pi * rng.random(n)
        pts = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
        try:
            hull = ConvexHull(pts)
            return from_vertices(pts[hull.vertices])
        except Exception:
            continue  # measure-zero degeneracy: redraw


@dataclass(frozen=True)
class ShapeSpec:
    """Declarative shape description used by the CLI and JSON inputs."""

    family: str  # regular | isoT | rect | stadium | circumscribed | random | file
    n: int | None = None
    area: float | None = None
    k: float | None = None
    ell: float | None = None
    seed: int | None = None
    core_path: str | None = None
    tangent_angles: tuple[float, ...] | None = None
    radius: float | None = None
    path: str | None = None

    def build(self) -> ConvexPolygon:
        if self.family == "regular":
            return regular_polygon(self.n, self.area)
        if self.family == "isoT":
            return isosceles_T(self.k)
        if self.family == "rect":
            return rectangle_strip(self.ell)
        if self.family == "stadium":
            return stadium(load(self.core_path), self.ell)
        if self.family == "circumscribed":
            return circumscribed_polygon(self.tangent_angles, self.radius)
        if self.family == "random":
            return random_convex(self.n, self.seed)
        if self.family == "file":
            return load(self.path)
        raise RangeError(f"unknown shape family {self.family!r}")

    def to_json_obj(self) -> dict:
        out = {"family": self.family}
        for name in ("n", "area", "k", "ell", "seed", "core_path",
                     "tangent_angles", "radius", "path"):
            value = getattr(self, name)
            if value is not None:
                out[name] = list(value) if isinstance(value, tuple) else value
        return out
