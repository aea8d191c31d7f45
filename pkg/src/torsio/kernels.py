"""Backend selection for the hot numeric kernels.

Prefers the compiled Cython extension, falls back to the vectorized
numpy reference.  ``BACKEND`` names the active choice;
:func:`available_backends` exposes both for equivalence tests and the
benchmark script.
"""

from __future__ import annotations

import os

from . import _kernels_py

_speedups = None
if not os.environ.get("TORSIO_FORCE_NUMPY"):
    try:  # pragma: no cover - depends on build environment
        from . import _speedups
    except ImportError:  # pragma: no cover
        _speedups = None

if _speedups is not None:
    _impl = _speedups
    BACKEND = "cython"
else:
    _impl = _kernels_py
    BACKEND = "numpy"

tri_geometry = _impl.tri_geometry
stiffness_values = _impl.stiffness_values
element_gradients = _impl.element_gradients
load_vector = _impl.load_vector
integral_u = _impl.integral_u
gradient_pow_integral = _impl.gradient_pow_integral
steiner_integrand = _impl.steiner_integrand


def available_backends() -> dict:
    out = {"numpy": _kernels_py}
    if _speedups is not None:
        out["cython"] = _speedups
    return out
