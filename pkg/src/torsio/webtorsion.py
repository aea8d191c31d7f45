"""Web p-torsion: exact evaluation over an offset trace plus closed forms.

The web p-torsion of a convex polygon is the energy of the best
boundary-distance-only competitor for the p-torsion problem.  It has an
exact representation as a one-dimensional integral over the offset flow,

    w_p = integral_0^R  area(t)^q / boundary(t)^(q-1)  dt,

with q = p/(p-1), which this module evaluates piece by piece from the
stored Steiner polynomials.  For circumscribed polygons and polygonal
stadiums the integral reduces to closed forms used here as independent
cross-checks, never as silent substitutes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RangeError
from .kernels import steiner_integrand
from .offset import OffsetTrace
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_adaptive

METHOD_TRACE = "exact-trace-piecewise"
METHOD_CIRCUMSCRIBED = "closed-form-circumscribed"
METHOD_STADIUM = "closed-form-stadium"


def conjugate_exponent(p: float) -> float:
    if p <= 1.0:
        raise RangeError("p must exceed 1")
    return p / (p - 1.0)


@dataclass(frozen=True)
class TorsionEstimate:
    """Torsion-like value with an error bound and method metadata."""

    value: float
    abs_error_bound: float
    method: str
    p: float
    q: float = field(init=False)
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "q", conjugate_exponent(self.p))

    def to_json_obj(self) -> dict:
        return {
            "value": self.value,
            "abs_error_bound": self.abs_error_bound,
            "method": self.method,
            "p": self.p,
            "q": self.q,
            **({"detail": self.detail} if self.detail else {}),
        }


def web_torsion(trace: OffsetTrace, p: float,
                cfg: QuadratureConfig = DEFAULT_CONFIG) -> TorsionEstimate:
    """Exact web p-torsion from the offset trace.

    Each trace piece contributes a smooth integrand (near a point
    extinction it vanishes like (R-t)^(q+1)), so per-piece adaptive
    Gauss-Legendre is exact to the requested relative tolerance.
    """
    q = conjugate_exponent(p)
    total, err = 0.0, 0.0
    for piece in trace.pieces:
        a_coef, l_coef, c_coef = piece.A, piece.L, piece.C

        def f(s, _a=a_coef, _l=l_coef, _c=c_coef):
            return steiner_integrand(_a, _l, _c, q, s)

        value, bound = integrate_adaptive(f, 0.0, piece.t_end - piece.t_start, cfg)
        total += value
        err += bound
    return TorsionEstimate(total, err, METHOD_TRACE, p)


def web_torsion_circumscribed(area: float, perimeter: float, q: float) -> float:
    """Closed form for polygons whose incircle touches every side."""
    if q <= 1.0:
        raise RangeError("q must exceed 1")
    return 2.0 / (q + 2.0) * area ** (q + 1.0) / perimeter ** q


def _stadium_core_integral(x: float, q: float,
                           cfg: QuadratureConfig) -> tuple[float, float]:
    """integral_0^1 t^q (x+t)^q / (x+2t)^(q-1) dt."""

    def f(t):
        return t ** q * (x + t) ** q / (x + 2.0 * t) ** (q - 1.0)

    return integrate_adaptive(f, 0.0, 1.0, cfg)


def stadium_F(x: float, q: float,
              cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Perimeter shape functional of a polygonal stadium.

    For a stadium with core area A, inradius R and separation ell,
    x = 2 R ell / A, this equals  w_p |boundary|^q / |area|^(q+1).
    x = 0 reproduces the circumscribed constant 2/(q+2).
    """
    if x < 0.0:
        raise RangeError("x must be nonnegative")
    if q <= 1.0:
        raise RangeError("q must exceed 1")
    value, _ = _stadium_core_integral(x, q, cfg)
    return (x + 2.0) ** q / (x + 1.0) ** (q + 1.0) * value


def stadium_inradius_functional(x: float, q: float,
                                cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Inradius shape functional w_p / (R^q |area|) of a polygonal stadium."""
    if x < 0.0:
        raise RangeError("x must be nonnegative")
    if q <= 1.0:
        raise RangeError("q must exceed 1")
    value, _ = _stadium_core_integral(x, q, cfg)
    return value / (x + 1.0)


def phi_psi(y: float, q: float,
            cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Difference functions behind the stadium double inequality.

    Phi compares the running integral of g(s) = s^q (1+s)^q / (1+2s)^(q-1)
    against (2/(q+2)) h(y), Psi against (1/(q+1)) h(y), where
    h(y) = y^(q+1) (1+y)^(q+1) / (1+2y)^q.  Phi < 0 < Psi for all y > 0
    is exactly the two-sided perimeter-functional bound.
    """
    if y <= 0.0:
        raise RangeError("y must be positive")
    if q <= 1.0:
        raise RangeError("q must exceed 1")

    def g(s):
        return s ** q * (1.0 + s) ** q / (1.0 + 2.0 * s) ** (q - 1.0)

    integral, _ = integrate_adaptive(g, 0.0, y, cfg)
    h = y ** (q + 1.0) * (1.0 + y) ** (q + 1.0) / (1.0 + 2.0 * y) ** q
    return integral - 2.0 / (q + 2.0) * h, integral - h / (q + 1.0)


def scale_exponent(q: float) -> float:
    """w_p(lambda * Omega) = lambda ** (q + 2) * w_p(Omega)."""
    return q + 2.0
