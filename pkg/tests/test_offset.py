import math

import numpy as np
import pytest

from torsio import (area, chebyshev_center, cotangent_sum, from_vertices,
                    inradius, isosceles_T, offset_at, offset_trace, perimeter,
                    stadium_decompose)
from torsio.errors import NotStadium

from oracles import brute_force_offset, congruent


def sample_times(trace, count=50):
    # Interior samples; the last 2% is skipped because reconstructing a
    # nearly-extinct polygon is numerically meaningless.
    return np.linspace(0.0, 0.98 * trace.R, count + 1)[1:]


def test_square_trace(unit_square):
    tr = offset_trace(unit_square)
    assert len(tr.pieces) == 1
    assert tr.R == pytest.approx(0.5, abs=1e-14)
    assert tr.r_first == pytest.approx(0.5, abs=1e-14)
    assert tr.extinction.kind == "point"
    piece = tr.pieces[0]
    assert piece.area_coeffs == pytest.approx((1.0, -4.0, 4.0), rel=1e-13)
    assert piece.perimeter_coeffs == pytest.approx((4.0, -8.0), rel=1e-13)


def test_rect_trace(rect_3x2):
    tr = offset_trace(rect_3x2)
    assert len(tr.pieces) == 1
    assert tr.R == pytest.approx(1.0, abs=1e-13)
    assert tr.extinction.kind == "segment"
    assert tr.extinction.length == pytest.approx(1.0, abs=1e-12)
    ends = np.sort(np.asarray(tr.extinction.where), axis=0)
    assert ends == pytest.approx(np.array([[-0.5, 0.0], [0.5, 0.0]]), abs=1e-12)


def test_trapezoid_is_event_free(trapezoid):
    # Both lateral edges join the two parallel sides, so they collapse
    # exactly at half the slab width: no event happens before extinction.
    tr = offset_trace(trapezoid)
    assert len(tr.pieces) == 1
    assert tr.r_first == pytest.approx(tr.R, rel=1e-12)
    assert tr.R == pytest.approx(0.5, rel=1e-12)
    assert tr.extinction.kind == "segment"
    assert tr.extinction.length == pytest.approx(2 - math.sqrt(2) / 2, rel=1e-12)


def test_skew_quad_has_event(skew_quad):
    tr = offset_trace(skew_quad)
    assert len(tr.pieces) == 2
    assert tr.r_first < tr.R - 1e-6
    assert tr.pieces[0].t_end == pytest.approx(tr.r_first)
    assert tr.pieces[1].polygon.n == 3


@pytest.mark.parametrize("fixture", ["trapezoid", "skew_quad"])
def test_trace_matches_brute_force(fixture, request):
    poly = request.getfixturevalue(fixture)
    tr = offset_trace(poly)
    for t in sample_times(tr):
        ref = brute_force_offset(poly.vertices, t)
        assert ref is not None
        a_ref, l_ref = ref
        assert tr.area_at(t) == pytest.approx(a_ref, rel=1e-10)
        assert tr.perimeter_at(t) == pytest.approx(l_ref, rel=1e-10)


def test_offset_at_square(unit_square):
    inner = offset_at(unit_square, 0.25)
    assert inner.n == 4
    assert area(inner) == pytest.approx(0.25, rel=1e-12)
    assert np.allclose(sorted(map(tuple, inner.vertices.tolist())),
                       [(0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)])


def test_offset_at_extinction_empty(unit_square, skew_quad):
    for poly in (unit_square, skew_quad):
        tr = offset_trace(poly)
        assert offset_at(poly, tr.R, tr) is None
        assert offset_at(poly, tr.R * 2, tr) is None
    assert offset_at(unit_square, 0.0) is unit_square
    with pytest.raises(ValueError):
        offset_at(unit_square, -0.1)


def test_offset_at_steiner_prediction(trapezoid):
    tr = offset_trace(trapezoid)
    t = 0.3
    assert t <= tr.r_first
    inner = offset_at(trapezoid, t, tr)
    expected = (area(trapezoid) - perimeter(trapezoid) * t
                + cotangent_sum(trapezoid) * t * t)
    assert area(inner) == pytest.approx(expected, rel=1e-12)


def test_semigroup(corpus):
    for poly in corpus[:20]:
        tr = offset_trace(poly)
        s, t = 0.3 * tr.R, 0.35 * tr.R
        one = offset_at(offset_at(poly, s), t)
        two = offset_at(poly, s + t)
        assert congruent(one, two, tol=1e-9)


def test_steiner_consistency(corpus, rng):
    # area/perimeter predicted by the first-piece coefficients agree
    # with recomputed metrics of the reconstructed polygon.
    for poly in corpus:
        tr = offset_trace(poly)
        a0, l0, c0 = area(poly), perimeter(poly), cotangent_sum(poly)
        for t in rng.uniform(0.0, tr.r_first * 0.999, size=20):
            inner = offset_at(poly, t, tr)
            pred_a = a0 - l0 * t + c0 * t * t
            pred_l = l0 - 2.0 * c0 * t
            assert area(inner) == pytest.approx(pred_a, rel=1e-9)
            assert perimeter(inner) == pytest.approx(pred_l, rel=1e-9)


def test_perimeter_monotone_and_disk_bound(corpus):
    for poly in corpus[:30]:
        tr = offset_trace(poly)
        l0 = perimeter(poly)
        ts = sample_times(tr, 40)
        per = [tr.perimeter_at(t) for t in ts]
        assert all(b <= a + 1e-12 for a, b in zip(per, per[1:]))
        for t, l_t in zip(ts, per):
            assert l_t <= l0 - 2.0 * math.pi * t + 1e-9 * l0


def test_cot_sum_at_least_pi_per_piece(corpus):
    for poly in corpus:
        for piece in offset_trace(poly).pieces:
            assert piece.C >= math.pi - 1e-12


def test_inradius_known_values(unit_square):
    assert inradius(unit_square) == pytest.approx(0.5, abs=1e-13)
    tri = isosceles_T(1.0)
    assert inradius(tri) == pytest.approx(math.sqrt(3) / 6, rel=1e-12)


def test_inradius_matches_lp(skew_quad, corpus):
    # trace extinction vs an independently solved Chebyshev-center LP
    for poly in [skew_quad] + corpus[:30]:
        tr = offset_trace(poly)
        _, r_lp = chebyshev_center(poly)
        assert tr.R == pytest.approx(r_lp, rel=1e-7, abs=1e-9)
        inradius(poly, tr)  # must not raise OracleMismatch


def test_final_pieces_are_stadiums(corpus):
    # After the last side loss, the remaining flow is event-free.
    for poly in corpus[:30]:
        tr = offset_trace(poly)
        last = tr.pieces[-1]
        sub = stadium_decompose(last.polygon)
        assert sub.R == pytest.approx(tr.R - last.t_start, rel=1e-6)


def test_stadium_decompose_rect(rect_3x2):
    dec = stadium_decompose(rect_3x2)
    assert dec.ell == pytest.approx(1.0, abs=1e-12)
    assert dec.R == pytest.approx(1.0, abs=1e-12)
    square = from_vertices([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert congruent(dec.core, square, tol=1e-9)


def test_stadium_decompose_triangle():
    tri = isosceles_T(1.3)
    dec = stadium_decompose(tri)
    assert dec.ell == pytest.approx(0.0, abs=1e-9)
    assert congruent(dec.core, tri, tol=1e-9)


def test_stadium_decompose_rejects_skew(skew_quad):
    with pytest.raises(NotStadium):
        stadium_decompose(skew_quad)


def test_decomposition_identities(trapezoid):
    dec = stadium_decompose(trapezoid)
    assert area(trapezoid) == pytest.approx(
        area(dec.core) + 2 * dec.ell * dec.R, rel=1e-12)
    assert perimeter(trapezoid) == pytest.approx(
        perimeter(dec.core) + 2 * dec.ell, rel=1e-12)
    assert cotangent_sum(trapezoid) == pytest.approx(
        cotangent_sum(dec.core), rel=1e-12)
