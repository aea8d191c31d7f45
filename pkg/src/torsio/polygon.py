"""Convex polygon primitives: validation, metrics, JSON round-trip.

A :class:`ConvexPolygon` stores its vertices counterclockwise in a
read-only array.  :func:`from_vertices` is the validating constructor:
it orders arbitrary convex-position input counterclockwise, merges
duplicate and collinear vertices, and rejects everything else.  All
lengths are dimensionless.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, NotConvex

# Cross products are compared against this factor times the squared
# bounding-box diagonal; below it a vertex counts as collinear.
CONVEXITY_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex planar polygon, vertices in CCW order.

    Build instances through :func:`from_vertices`; the dataclass itself
    does not validate.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def area(self) -> float:
        return area(self)

    @property
    def perimeter(self) -> float:
        return perimeter(self)

    @property
    def cotangent_sum(self) -> float:
        return cotangent_sum(self)

    def __repr__(self):
        return f"ConvexPolygon({self.n} vertices, area={self.area:.6g})"


def _bbox_diag(pts: np.ndarray) -> float:
    span = pts.max(axis=0) - pts.min(axis=0)
    return float(math.hypot(span[0], span[1]))


def _cross_products(pts: np.ndarray) -> np.ndarray:
    """z-component of (v_i - v_{i-1}) x (v_{i+1} - v_i) for every vertex."""
    prev = pts - np.roll(pts, 1, axis=0)
    nxt = np.roll(pts, -1, axis=0) - pts
    return prev[:, 0] * nxt[:, 1] - prev[:, 1] * nxt[:, 0]


def from_vertices(points) -> ConvexPolygon:
    """Validating constructor.

    Accepts at least three points in convex position (any order),
    returns them as a CCW polygon with collinear interior vertices
    merged.  Raises :class:`NotConvex` if some point lies strictly
    inside the hull of the others, :class:`Degenerate` if the input
    collapses to fewer than three vertices or to zero area.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise Degenerate("expected an (n, 2) array of points")
    if not np.all(np.isfinite(pts)):
        raise Degenerate("non-finite coordinate in input")
    if len(pts) < 3:
        raise Degenerate("need at least 3 points")

    diag = _bbox_diag(pts)
    if diag <= 0.0:
        raise Degenerate("all points coincide")
    dup_tol = 1e-12 * diag
    cross_tol = CONVEXITY_RTOL * diag * diag

    # Order counterclockwise around the centroid; radius breaks ties.
    centroid = pts.mean(axis=0)
    rel = pts - centroid
    ang = np.arctan2(rel[:, 1], rel[:, 0])
    pts = pts[np.lexsort(((rel ** 2).sum(axis=1), ang))]

    # Drop consecutive duplicates (including the wrap-around pair).
    keep = np.linalg.norm(pts - np.roll(pts, 1, axis=0), axis=1) > dup_tol
    pts = pts[keep]
    if len(pts) < 3:
        raise Degenerate("points collapse to fewer than 3 distinct vertices")

    # Merge collinear vertices; reject reflex ones.  Iterate because a
    # merge can make a neighbour collinear in turn.
    for _ in range(len(pts)):
        cr = _cross_products(pts)
        if np.any(cr < -cross_tol):
            raise NotConvex("reflex vertex beyond tolerance")
        flat = np.abs(cr) <= cross_tol
        if not flat.any():
            break
        pts = pts[~flat]
        if len(pts) < 3:
            raise Degenerate("collinear input collapses below 3 vertices")
    else:
        raise Degenerate("vertex merging did not stabilize")

    a = 0.5 * float(np.sum(pts[:, 0] * np.roll(pts[:, 1], -1)
                           - np.roll(pts[:, 0], -1) * pts[:, 1]))
    if a <= cross_tol:
        raise Degenerate("area below tolerance")

    # Canonical start: lexicographically smallest vertex.
    start = np.lexsort((pts[:, 1], pts[:, 0]))[0]
    return ConvexPolygon(np.roll(pts, -start, axis=0))


def area(poly: ConvexPolygon) -> float:
    """Shoelace area (positive for CCW polygons)."""
    v = poly.vertices
    return 0.5 * float(np.sum(v[:, 0] * np.roll(v[:, 1], -1)
                              - np.roll(v[:, 0], -1) * v[:, 1]))


def perimeter(poly: ConvexPolygon) -> float:
    return float(edge_lengths(poly).sum())


def edge_vectors(poly: ConvexPolygon) -> np.ndarray:
    """Edge i runs from vertex i to vertex i+1 (cyclic)."""
    v = poly.vertices
    return np.roll(v, -1, axis=0) - v


def edge_lengths(poly: ConvexPolygon) -> np.ndarray:
    return np.linalg.norm(edge_vectors(poly), axis=1)


def vertex_half_cotangents(poly: ConvexPolygon) -> np.ndarray:
    """cot(theta_i / 2) for the interior angle theta_i at every vertex.

    With phi the exterior turn angle at the vertex, theta = pi - phi and
    cot(theta/2) = tan(phi/2).  Going through atan2 keeps full relative
    accuracy even for the nearly-straight angles of many-sided polygons,
    where half-angle identities in cos(theta) cancel catastrophically.
    """
    e = edge_vectors(poly)
    e_prev = np.roll(e, 1, axis=0)
    dot = (e_prev * e).sum(axis=1)
    cross = e_prev[:, 0] * e[:, 1] - e_prev[:, 1] * e[:, 0]
    return np.tan(0.5 * np.arctan2(cross, dot))


def cotangent_sum(poly: ConvexPolygon) -> float:
    """Sum of cot(theta_i/2) over the interior angles; always >= pi."""
    return float(vertex_half_cotangents(poly).sum())


def isoperimetric_defect(poly: ConvexPolygon) -> float:
    """|dOmega|^2 / (4 C) - |Omega|; nonnegative, zero iff circumscribed."""
    return perimeter(poly) ** 2 / (4.0 * cotangent_sum(poly)) - area(poly)


def diameter(poly: ConvexPolygon) -> float:
    """Maximum vertex-to-vertex distance."""
    v = poly.vertices
    d2 = ((v[:, None, :] - v[None, :, :]) ** 2).sum(axis=2)
    return float(math.sqrt(d2.max()))


def transform(poly: ConvexPolygon, *, rotate: float = 0.0,
              translate=(0.0, 0.0), scale: float = 1.0) -> ConvexPolygon:
    """Scale, then rotate by `rotate` radians, then translate."""
    v = poly.vertices * scale
    if rotate:
        c, s = math.cos(rotate), math.sin(rotate)
        v = v @ np.array([[c, s], [-s, c]])
    v = v + np.asarray(translate, dtype=float)
    return from_vertices(v)


def to_json_obj(poly: ConvexPolygon) -> dict:
    return {"vertices": [[float(x), float(y)] for x, y in poly.vertices]}


def to_json(poly: ConvexPolygon) -> str:
    return json.dumps(to_json_obj(poly))


def from_json_obj(obj) -> ConvexPolygon:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise Degenerate('polygon JSON must be {"vertices": [[x, y], ...]}')
    return from_vertices(obj["vertices"])


def from_json(text: str) -> ConvexPolygon:
    return from_json_obj(json.loads(text))


def load(path) -> ConvexPolygon:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json(fh.read())


def save(poly: ConvexPolygon, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json(poly) + "\n")
