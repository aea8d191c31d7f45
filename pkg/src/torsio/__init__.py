"""torsio: torsion functionals of convex planar polygons.

Exact web p-torsion through the inner-parallel-set offset flow, a P1
finite-element solver for the p-Laplace torsion problem, and verified
two-sided bounds for the associated dilation-invariant shape
functionals.
"""

from .bounds import (BoundsConfig, BoundsReport, ConjectureVerdict,
                     conjecture_verdict, evaluate_bounds, gamma, gamma_tilde,
                     gamma_threshold, refined_isoperimetric_check,
                     triangle_threshold_roots)
from .errors import TorsioError
from .fem import SolveReport, solve_p, solve_p2, torsion
from .kernels import BACKEND
from .mesh import TriMesh, structured_triangle_mesh, triangulate
from .offset import (Extinction, OffsetTrace, StadiumDecomposition, TracePiece,
                     chebyshev_center, inradius, offset_at, offset_trace,
                     stadium_decompose)
from .polygon import (ConvexPolygon, area, cotangent_sum, from_vertices,
                      isoperimetric_defect, perimeter)
from .quadrature import QuadratureConfig
from .shapes import (ShapeSpec, circumscribed_polygon, isosceles_T,
                     random_convex, rectangle_strip, regular_polygon, stadium)
from .webtorsion import (TorsionEstimate, conjugate_exponent, phi_psi,
                         stadium_F, stadium_inradius_functional, web_torsion,
                         web_torsion_circumscribed)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BoundsConfig", "BoundsReport", "ConjectureVerdict",
    "ConvexPolygon", "Extinction", "OffsetTrace", "QuadratureConfig",
    "ShapeSpec", "SolveReport", "StadiumDecomposition", "TorsioError",
    "TorsionEstimate", "TracePiece", "TriMesh", "area", "chebyshev_center",
    "circumscribed_polygon", "conjecture_verdict", "conjugate_exponent",
    "cotangent_sum", "evaluate_bounds", "from_vertices", "gamma",
    "gamma_threshold", "gamma_tilde", "inradius", "isoperimetric_defect",
    "isosceles_T", "offset_at", "offset_trace", "perimeter", "phi_psi",
    "random_convex", "rectangle_strip", "refined_isoperimetric_check",
    "regular_polygon", "solve_p", "solve_p2", "stadium", "stadium_F",
    "stadium_decompose", "stadium_inradius_functional",
    "structured_triangle_mesh", "torsion", "triangle_threshold_roots",
    "triangulate", "web_torsion", "web_torsion_circumscribed",
]
