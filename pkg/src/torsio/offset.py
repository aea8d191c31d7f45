"""Inner parallel sets of convex polygons.

The offset flow shrinks every edge inward at unit speed.  While the
vertex count stays constant, area and perimeter follow the polygon
Steiner laws

    |Omega_t| = A - L t + C t**2,      |dOmega_t| = L - 2 C t,

with C the cotangent sum of the current polygon.  An *event* happens
when an edge length reaches zero; the polygon is rebuilt and the flow
continues until the domain degenerates to a point or a segment.
:func:`offset_trace` records the full event history, which later powers
the exact web-torsion quadrature.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import (Degenerate, NotConvex, NotStadium, NumericalCollapse,
                     OracleMismatch)
from .polygon import (ConvexPolygon, area, cotangent_sum, diameter,
                      edge_lengths, from_vertices, perimeter,
                      vertex_half_cotangents)

# Event times closer than EVENT_RTOL * (perimeter / 2 pi) are merged;
# exact ties are common for symmetric inputs.
EVENT_RTOL = 1e-9


@dataclass(frozen=True)
class TracePiece:
    """Offset history between two consecutive events.

    Within [t_start, t_end) the polygon keeps its vertex count and the
    stored coefficients are exact:  with s = t - t_start,
    area(t) = A - L s + C s**2 and boundary(t) = L - 2 C s.
    """

    t_start: float
    t_end: float
    polygon: ConvexPolygon
    A: float
    L: float
    C: float

    @property
    def area_coeffs(self) -> tuple[float, float, float]:
        return (self.A, -self.L, self.C)

    @property
    def perimeter_coeffs(self) -> tuple[float, float]:
        return (self.L, -2.0 * self.C)

    def area_at(self, t: float) -> float:
        s = t - self.t_start
        return self.A - self.L * s + self.C * s * s

    def perimeter_at(self, t: float) -> float:
        s = t - self.t_start
        return self.L - 2.0 * self.C * s


@dataclass(frozen=True)
class Extinction:
    """Terminal set of the offset flow: a point or a segment."""

    kind: str  # "point" | "segment"
    where: np.ndarray  # point: (2,); segment: (2, 2) endpoints
    length: float

    def __post_init__(self):
        w = np.array(self.where, dtype=float)
        w.flags.writeable = False
        object.__setattr__(self, "where", w)


@dataclass(frozen=True)
class OffsetTrace:
    """Event decomposition of the inner offset flow of one polygon."""

    pieces: tuple[TracePiece, ...]
    r_first: float  # first event time (= R for polygonal stadiums)
    R: float  # inradius = extinction time
    extinction: Extinction

    def piece_at(self, t: float) -> TracePiece | None:
        """Piece owning time t (pieces own their left endpoint)."""
        if t < 0.0 or t >= self.R:
            return None
        starts = [p.t_start for p in self.pieces]
        return self.pieces[bisect.bisect_right(starts, t) - 1]

    def area_at(self, t: float) -> float:
        if t >= self.R:
            return 0.0
        piece = self.piece_at(t)
        return piece.area_at(t) if piece is not None else 0.0

    def perimeter_at(self, t: float) -> float:
        if t >= self.R:
            return 2.0 * self.extinction.length if t == self.R else 0.0
        piece = self.piece_at(t)
        return piece.perimeter_at(t) if piece is not None else 0.0


def _outward_normals(v: np.ndarray) -> np.ndarray:
    e = np.roll(v, -1, axis=0) - v
    lengths = np.linalg.norm(e, axis=1)
    return np.column_stack((e[:, 1], -e[:, 0])) / lengths[:, None]


def _shrink_vertices(v: np.ndarray, s: float) -> np.ndarray:
    """Move every vertex along its angle bisector for offset depth s.

    The new vertex is the intersection of the two adjacent edge lines
    pushed inward by s:  v' = v - s (n_prev + n_next) / (1 + n_prev.n_next).
    """
    n = _outward_normals(v)
    n_prev = np.roll(n, 1, axis=0)
    denom = 1.0 + (n_prev * n).sum(axis=1)
    return v - s * (n_prev + n) / denom[:, None]


def _extinguish(q: ConvexPolygon, t0: float, t_ext: float, a: float,
                length: float, c: float, scale: float,
                pieces: list) -> OffsetTrace:
    """Close the trace: classify the terminal set and append the last piece.

    The point/segment decision uses the Steiner perimeter law (linear,
    hence stable) rather than the degenerate vertex positions: at a
    point extinction the area polynomial has a double root and t_ext
    itself is only sqrt(machine-eps) accurate.
    """
    eps = float(np.finfo(float).eps)
    ell_pred = max(0.0, 0.5 * (length - 2.0 * c * t_ext))
    # ell_pred ~ sqrt(L^2 - 4AC)/2, whose cancellation noise scales with
    # sqrt(eps) * L; shorter residual segments count as points.
    if ell_pred <= max(1e-7 * scale, 32.0 * math.sqrt(eps) * length):
        # Circumscribed final piece: recover the incircle center and
        # radius from all edge lines at once (consistent system).
        n, b = halfplanes(q)
        sol, *_ = np.linalg.lstsq(np.column_stack((n, np.ones(len(b)))), b,
                                  rcond=None)
        center, r_loc = sol[:2], float(sol[2])
        if not (abs(r_loc - t_ext) <= 1e-6 * max(scale, t_ext)):
            r_loc = t_ext
        t_end = t0 + r_loc
        ext = Extinction("point", center, 0.0)
    else:
        pts = _shrink_vertices(q.vertices, t_ext)
        d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        i, j = np.unravel_index(int(d2.argmax()), d2.shape)
        spread = math.sqrt(float(d2[i, j]))
        axis = (pts[j] - pts[i]) / spread
        center = pts.mean(axis=0)
        t_vals = (pts - center) @ axis
        transverse = np.abs((pts - center) @ np.array([-axis[1], axis[0]]))
        if transverse.max() > 1e-6 * scale:
            raise NumericalCollapse(
                "extinction set is neither a point nor a segment")
        lo, hi = float(t_vals.min()), float(t_vals.max())
        ends = np.vstack((center + lo * axis, center + hi * axis))
        ext = Extinction("segment", ends, hi - lo)
        t_end = t0 + t_ext
    pieces.append(TracePiece(t0, t_end, q, a, length, c))
    return OffsetTrace(tuple(pieces), pieces[0].t_end, t_end, ext)


def offset_trace(poly: ConvexPolygon) -> OffsetTrace:
    """Run the event-driven offset flow until extinction.

    Each edge's collapse time is its length over the sum of the two
    adjacent half-angle cotangents; the minimum over edges gives the
    next event.  The polygon dies inside a piece when its Steiner area
    polynomial reaches zero no later than the first edge collapse; that
    root is the inradius.
    """
    eps = float(np.finfo(float).eps)
    scale = diameter(poly)
    tie = EVENT_RTOL * perimeter(poly) / (2.0 * math.pi)
    pieces: list[TracePiece] = []
    q = poly
    t0 = 0.0
    for _ in range(4 * poly.n + 16):
        v = q.vertices
        a, length, c = area(q), perimeter(q), cotangent_sum(q)
        cots = vertex_half_cotangents(q)
        edge_len = edge_lengths(q)
        collapse = edge_len / (cots + np.roll(cots, -1))
        s_min = float(collapse.min())
        disc = max(length * length - 4.0 * a * c, 0.0)
        t_ext = 2.0 * a / (length + math.sqrt(disc))
        # Near a point extinction t_ext carries a sqrt(eps)-sized error
        # (double root), so the extinction/event tie window must widen.
        tie_ext = max(tie, 8.0 * math.sqrt(eps * a / c))
        if t_ext <= s_min + tie_ext:
            return _extinguish(q, t0, t_ext, a, length, c, scale, pieces)
        if s_min > tie:
            pieces.append(TracePiece(t0, t0 + s_min, q, a, length, c))
        shrunk = _shrink_vertices(v, s_min)
        collapsed = collapse <= s_min + tie
        drop = (np.flatnonzero(collapsed) + 1) % len(shrunk)
        shrunk = np.delete(shrunk, drop, axis=0)
        if len(shrunk) < 3:
            # Every edge died at once: the event itself is the extinction.
            return _extinguish(q, t0, s_min, a, length, c, scale, pieces)
        try:
            q = from_vertices(shrunk)
        except (NotConvex, Degenerate) as exc:
            raise NumericalCollapse(f"rebuild failed at t={t0 + s_min}: {exc}")
        t0 += s_min
    raise NumericalCollapse("offset event loop did not terminate")


def offset_at(poly: ConvexPolygon, t: float,
              trace: OffsetTrace | None = None) -> ConvexPolygon | None:
    """Inner parallel set Omega_t; None once t reaches the inradius."""
    if t < 0.0:
        raise ValueError("offset depth must be nonnegative")
    if t == 0.0:
        return poly
    if trace is None:
        trace = offset_trace(poly)
    if t >= trace.R:
        return None
    piece = trace.piece_at(t)
    try:
        return from_vertices(_shrink_vertices(piece.polygon.vertices,
                                              t - piece.t_start))
    except (NotConvex, Degenerate) as exc:
        raise NumericalCollapse(f"offset at t={t} is numerically degenerate: {exc}")


def halfplanes(poly: ConvexPolygon) -> tuple[np.ndarray, np.ndarray]:
    """(normals, offsets) with interior = {x : n_i . x <= b_i for all i}."""
    n = _outward_normals(poly.vertices)
    b = (n * poly.vertices).sum(axis=1)
    return n, b


def chebyshev_center(poly: ConvexPolygon) -> tuple[np.ndarray, float]:
    """Center and radius of the largest inscribed disk, via an LP."""
    n, b = halfplanes(poly)
    m = len(b)
    c = np.zeros(3)
    c[2] = -1.0
    a_ub = np.column_stack((n, np.ones(m)))
    res = linprog(c, A_ub=a_ub, b_ub=b,
                  bounds=[(None, None), (None, None), (0.0, None)],
                  method="highs")
    if not res.success:
        raise OracleMismatch(f"Chebyshev LP failed: {res.message}")
    return res.x[:2], float(res.x[2])


def inradius(poly: ConvexPolygon, trace: OffsetTrace | None = None) -> float:
    """Extinction time of the offset flow, cross-checked against the LP.

    The two computations are independent (event arithmetic vs linear
    programming); disagreement beyond tolerance raises, since it means
    the event engine mis-stepped.
    """
    if trace is None:
        trace = offset_trace(poly)
    _, r_lp = chebyshev_center(poly)
    # The trace time is exact event arithmetic for clean inputs, but a
    # nearly-circumscribed polygon ends in an O(1e-7)-wide cluster of
    # simultaneous events; the guard only has to catch engine bugs.
    tol = max(1e-7 * trace.R, 1e-9 * diameter(poly))
    if abs(trace.R - r_lp) > tol:
        raise OracleMismatch(
            f"inradius mismatch: trace {trace.R!r} vs LP {r_lp!r}")
    return trace.R


@dataclass(frozen=True)
class StadiumDecomposition:
    """Split of a polygon with r = R into core + separating rectangle.

    `core` is a circumscribed polygon in normalized coordinates
    (incircle centered at the origin, the two split sides horizontal);
    the original polygon is congruent to the core cut along x = 0 and
    pulled apart by `ell`.
    """

    core: ConvexPolygon
    ell: float
    R: float


def _clip_halfplane(pts: np.ndarray, normal: np.ndarray, offset: float,
                    tol: float) -> np.ndarray:
    """Keep {x : normal . x <= offset} of a convex CCW vertex cycle."""
    out = []
    d = pts @ normal - offset
    m = len(pts)
    for i in range(m):
        j = (i + 1) % m
        if d[i] <= tol:
            out.append(pts[i])
        if (d[i] < -tol and d[j] > tol) or (d[i] > tol and d[j] < -tol):
            w = d[i] / (d[i] - d[j])
            out.append(pts[i] + w * (pts[j] - pts[i]))
    return np.asarray(out)


def stadium_decompose(poly: ConvexPolygon,
                      trace: OffsetTrace | None = None) -> StadiumDecomposition:
    """Recover (core, ell) for polygons whose offset flow has no events.

    Raises :class:`NotStadium` when the polygon loses a side strictly
    before extinction (r_first < R).
    """
    if trace is None:
        trace = offset_trace(poly)
    tol_t = 1e-7 * trace.R
    if trace.r_first < trace.R - tol_t:
        raise NotStadium(
            f"first event at {trace.r_first} precedes extinction at {trace.R}")
    ext = trace.extinction
    if ext.kind == "point":
        core = from_vertices(poly.vertices - ext.where)
        return StadiumDecomposition(core, 0.0, trace.R)

    e1, e2 = ext.where
    ell = ext.length
    axis = (e2 - e1) / ell
    mid = 0.5 * (e1 + e2)
    rot = np.array([[axis[0], axis[1]], [-axis[1], axis[0]]])
    local = (poly.vertices - mid) @ rot.T

    tol = 1e-12 * diameter(poly)
    left = _clip_halfplane(local, np.array([1.0, 0.0]), -ell / 2.0, tol)
    right = _clip_halfplane(local, np.array([-1.0, 0.0]), -ell / 2.0, tol)
    pts = np.vstack((left + [ell / 2.0, 0.0], right - [ell / 2.0, 0.0]))
    core = from_vertices(pts)

    # The core must be circumscribed: area = perimeter * R / 2.
    r = trace.R
    if abs(area(core) - 0.5 * perimeter(core) * r) > 1e-8 * area(core) + 1e-12:
        raise NotStadium("glued core is not circumscribed about the incircle")
    return StadiumDecomposition(core, float(ell), r)
