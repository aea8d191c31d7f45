"""Reference numpy implementation of the hot numeric kernels.

Same call signatures as the compiled extension ``torsio._speedups``;
:mod:`torsio.kernels` picks whichever is available at import time.
"""

from __future__ import annotations

import numpy as np


def tri_geometry(nodes, triangles):
    """Per-element areas and P1 basis gradients.

    Returns (areas, gx, gy) where gx[e, i], gy[e, i] are the components
    of grad(lambda_i) on element e.
    """
    p = nodes[triangles]  # (m, 3, 2)
    d1 = p[:, 1] - p[:, 0]
    d2 = p[:, 2] - p[:, 0]
    det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    areas = 0.5 * det
    # grad lambda_i = rot(p_j - p_k) / (2A), rot(x, y) = (y, -x),
    # with (i, j, k) cyclic.
    opp = p[:, [1, 2, 0]] - p[:, [2, 0, 1]]  # (m, 3, 2): p_j - p_k per i
    gx = opp[:, :, 1] / det[:, None]
    gy = -opp[:, :, 0] / det[:, None]
    return areas, gx, gy


def stiffness_values(areas, gx, gy, weights=None):
    """Local 3x3 stiffness blocks, row-major flattened to (m, 9).

    Entry (i, j) is  w_e * A_e * grad(lambda_i) . grad(lambda_j).
    """
    dots = (gx[:, :, None] * gx[:, None, :] + gy[:, :, None] * gy[:, None, :])
    scale = areas if weights is None else areas * weights
    return (dots * scale[:, None, None]).reshape(len(areas), 9)


def element_gradients(triangles, gx, gy, u):
    """Constant per-element gradient of the P1 field u: (ux, uy) arrays."""
    uv = u[triangles]
    return (uv * gx).sum(axis=1), (uv * gy).sum(axis=1)


def load_vector(triangles, areas, n_nodes):
    """Assembled right-hand side of unit load: integral of each hat."""
    contrib = np.repeat(areas / 3.0, 3)
    return np.bincount(triangles.ravel(), weights=contrib, minlength=n_nodes)


def integral_u(triangles, areas, u):
    """Exact integral of a P1 field."""
    return float((areas * u[triangles].mean(axis=1)).sum())


def gradient_pow_integral(areas, ux, uy, p):
    """Integral of |grad u|^p (exact: gradients are element constants)."""
    return float((areas * (ux * ux + uy * uy) ** (0.5 * p)).sum())


def steiner_integrand(a, length, c, q, s):
    """Web-torsion integrand area(s)^q / boundary(s)^(q-1) on one piece.

    area(s) = a - length*s + c*s^2, boundary(s) = length - 2*c*s; both
    are clamped at zero so endpoint roundoff cannot produce NaNs for
    non-integer q.
    """
    s = np.asarray(s, dtype=float)
    ar = np.maximum(a - length * s + c * s * s, 0.0)
    bd = np.maximum(length - 2.0 * c * s, 1e-300)
    return ar ** q / bd ** (q - 1.0)
