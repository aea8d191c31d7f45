import numpy as np
import pytest

from torsio import from_vertices, random_convex


@pytest.fixture(scope="session")
def unit_square():
    return from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture(scope="session")
def rect_3x2():
    return from_vertices([(-1.5, -1), (1.5, -1), (1.5, 1), (-1.5, 1)])


@pytest.fixture(scope="session")
def trapezoid():
    # Has a pair of parallel sides, so its offset flow is event-free
    # (a polygonal stadium with a kite-shaped core).
    return from_vertices([(0, 0), (3, 0), (2, 1), (0, 1)])


@pytest.fixture(scope="session")
def skew_quad():
    # No parallel sides: loses a side strictly before extinction.
    return from_vertices([(0, 0), (3, 0), (2, 1), (0.5, 1.5)])


@pytest.fixture(scope="session")
def corpus():
    """100 seeded random convex polygons of mixed vertex counts."""
    return [random_convex(4 + k % 9, k) for k in range(1, 101)]


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
