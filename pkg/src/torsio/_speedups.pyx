# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``torsio._kernels_py``.

These fuse the per-element loops of P1 assembly and the web-torsion
integrand, the two inner loops that dominate FEM solves and trace
quadrature sweeps.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow

cnp.import_array()


def tri_geometry(const double[:, ::1] nodes, const int[:, ::1] triangles):
    cdef Py_ssize_t m = triangles.shape[0]
    cdef cnp.ndarray[double, ndim=1] areas = np.empty(m)
    cdef cnp.ndarray[double, ndim=2] gx = np.empty((m, 3))
    cdef cnp.ndarray[double, ndim=2] gy = np.empty((m, 3))
    cdef double[::1] areas_v = areas
    cdef double[:, ::1] gx_v = gx, gy_v = gy
    cdef Py_ssize_t e, i, j, k
    cdef double x0, y0, x1, y1, x2, y2, det
    cdef double px[3]
    cdef double py[3]
    for e in range(m):
        x0 = nodes[triangles[e, 0], 0]; y0 = nodes[triangles[e, 0], 1]
        x1 = nodes[triangles[e, 1], 0]; y1 = nodes[triangles[e, 1], 1]
        x2 = nodes[triangles[e, 2], 0]; y2 = nodes[triangles[e, 2], 1]
        det = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
        areas_v[e] = 0.5 * det
        px[0] = x0; px[1] = x1; px[2] = x2
        py[0] = y0; py[1] = y1; py[2] = y2
        for i in range(3):
            j = (i + 1) % 3
            k = (i + 2) % 3
            gx_v[e, i] = (py[j] - py[k]) / det
            gy_v[e, i] = -(px[j] - px[k]) / det
    return areas, gx, gy


def stiffness_values(const double[::1] areas, const double[:, ::1] gx,
                     const double[:, ::1] gy, weights=None):
    cdef Py_ssize_t m = areas.shape[0]
    cdef cnp.ndarray[double, ndim=2] vals = np.empty((m, 9))
    cdef double[:, ::1] vals_v = vals
    cdef const double[::1] w_v
    cdef bint weighted = weights is not None
    cdef Py_ssize_t e, i, j
    cdef double scale
    if weighted:
        w_v = weights
    for e in range(m):
        scale = areas[e] * w_v[e] if weighted else areas[e]
        for i in range(3):
            for j in range(3):
                vals_v[e, 3 * i + j] = scale * (gx[e, i] * gx[e, j]
                                                + gy[e, i] * gy[e, j])
    return vals


def element_gradients(const int[:, ::1] triangles, const double[:, ::1] gx,
                      const double[:, ::1] gy, const double[::1] u):
    cdef Py_ssize_t m = triangles.shape[0]
    cdef cnp.ndarray[double, ndim=1] ux = np.empty(m)
    cdef cnp.ndarray[double, ndim=1] uy = np.empty(m)
    cdef double[::1] ux_v = ux, uy_v = uy
    cdef Py_ssize_t e, i
    cdef double sx, sy, ui
    for e in range(m):
        sx = 0.0
        sy = 0.0
        for i in range(3):
            ui = u[triangles[e, i]]
            sx += ui * gx[e, i]
            sy += ui * gy[e, i]
        ux_v[e] = sx
        uy_v[e] = sy
    return ux, uy


def load_vector(const int[:, ::1] triangles, const double[::1] areas, Py_ssize_t n_nodes):
    cdef Py_ssize_t m = triangles.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(n_nodes)
    cdef double[::1] out_v = out
    cdef Py_ssize_t e, i
    cdef double third
    for e in range(m):
        third = areas[e] / 3.0
        for i in range(3):
            out_v[triangles[e, i]] += third
    return out


def integral_u(const int[:, ::1] triangles, const double[::1] areas, const double[::1] u):
    cdef Py_ssize_t m = triangles.shape[0]
    cdef double total = 0.0
    cdef Py_ssize_t e
    for e in range(m):
        total += areas[e] * (u[triangles[e, 0]] + u[triangles[e, 1]]
                             + u[triangles[e, 2]]) / 3.0
    return total


def gradient_pow_integral(const double[::1] areas, const double[::1] ux,
                          const double[::1] uy, double p):
    cdef Py_ssize_t m = areas.shape[0]
    cdef double total = 0.0
    cdef Py_ssize_t e
    for e in range(m):
        total += areas[e] * pow(ux[e] * ux[e] + uy[e] * uy[e], 0.5 * p)
    return total


def steiner_integrand(double a, double length, double c, double q, s):
    cdef cnp.ndarray[double, ndim=1] s_arr = np.ascontiguousarray(
        np.atleast_1d(np.asarray(s, dtype=np.float64)))
    cdef Py_ssize_t n = s_arr.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef const double[::1] s_v = s_arr
    cdef double[::1] out_v = out
    cdef Py_ssize_t i
    cdef double ar, bd, si
    for i in range(n):
        si = s_v[i]
        ar = a - length * si + c * si * si
        if ar < 0.0:
            ar = 0.0
        bd = length - 2.0 * c * si
        if bd < 1e-300:
            bd = 1e-300
        out_v[i] = pow(ar, q) / pow(bd, q - 1.0)
    if np.ndim(s) == 0:
        return out[0]
    return out
