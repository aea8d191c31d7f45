import math

import numpy as np
import pytest

from torsio import (BoundsConfig, area, conjecture_verdict, evaluate_bounds,
                    from_vertices, gamma, gamma_threshold, gamma_tilde,
                    isosceles_T, offset_trace, perimeter, random_convex,
                    rectangle_strip, refined_isoperimetric_check,
                    regular_polygon, triangle_threshold_roots)
from torsio import polygon as pg

CFG = BoundsConfig(fem_target_rel_err=1e-3)


def test_gamma_regular_is_one():
    for n in (3, 5, 8):
        assert gamma(regular_polygon(n, 2.0)) == pytest.approx(1.0, abs=1e-12)


def test_gamma_T2_closed_form():
    # perimeter ratio (k + sqrt(3/k^2 + k^2)) / 3 at k = 2
    expected = (2 + math.sqrt(3 / 4 + 4)) / 3
    assert gamma(isosceles_T(2.0)) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(1.39315, abs=5e-6)


def test_gamma_formula_across_k():
    for k in (0.2, 0.7, 1.0, 3.0, 10.0):
        expected = (k + math.sqrt(3 / k ** 2 + k ** 2)) / 3
        assert gamma(isosceles_T(k)) == pytest.approx(expected, rel=1e-12)


def test_gamma_at_least_one(corpus):
    for poly in corpus:
        assert gamma(poly) >= 1.0 - 1e-12


def test_gamma_tilde_cases():
    assert gamma_tilde(regular_polygon(6, 1.0)) == pytest.approx(1.0, abs=1e-12)
    t2 = isosceles_T(2.0)
    # triangle inradius = area / semiperimeter on both sides
    r_t2 = area(t2) / (perimeter(t2) / 2)
    reg = regular_polygon(3, area(t2))
    r_reg = area(reg) / (perimeter(reg) / 2)
    assert gamma_tilde(t2) == pytest.approx(r_reg / r_t2, rel=1e-10)


def test_gamma_tilde_thinning_rectangles():
    values = [gamma_tilde(rectangle_strip(ell)) for ell in (4.0, 40.0, 400.0)]
    assert values[0] > 1.0
    assert values[0] < values[1] < values[2]
    assert values[2] > 5.0


def test_gamma_invariance(skew_quad):
    base = gamma(skew_quad)
    moved = pg.transform(skew_quad, rotate=0.7, translate=(3.0, -2.0),
                         scale=2.5)
    assert gamma(moved) == pytest.approx(base, rel=1e-10)
    assert gamma_tilde(moved) == pytest.approx(gamma_tilde(skew_quad),
                                               rel=1e-10)


def test_gamma_threshold_triangle():
    value, err = gamma_threshold(3, 2.0, CFG)
    assert value == pytest.approx(math.sqrt(10) / 3, abs=1e-3)
    assert err < 1e-3


def test_gamma_threshold_sandwich():
    for n, p in ((3, 2.0), (5, 2.0), (4, 3.0)):
        q = p / (p - 1)
        value, _ = gamma_threshold(n, p, CFG)
        assert 1.0 < value < 2.0 / (q + 1.0) ** (1.0 / q) < 2.0


def test_gamma_threshold_cached():
    a = gamma_threshold(3, 2.0, CFG)
    b = gamma_threshold(3, 2.0, CFG)
    assert a == b


def test_evaluate_bounds_square_equality(unit_square):
    report = evaluate_bounds(unit_square, 2.0, CFG)
    assert report.perimeter_functional_web == pytest.approx(0.5, rel=1e-12)
    by_name = {c.name: c for c in report.checks}
    assert by_name["perimeter-web"].status == "pass"  # equality, non-strict
    assert report.all_pass
    assert (report.ratio == pytest.approx(
        (1 / 32) / 0.03514425373, rel=1e-3))


def test_evaluate_bounds_disk_like():
    poly = regular_polygon(64, math.pi)
    report = evaluate_bounds(poly, 2.0, CFG)
    assert report.inradius_functional_web == pytest.approx(1 / 8, rel=1e-10)
    assert report.inradius_functional_torsion == pytest.approx(1 / 8, rel=5e-3)
    assert report.ratio == pytest.approx(1.0, abs=5e-3)
    assert not any(c.status == "fail" for c in report.checks)


def test_evaluate_bounds_random(corpus):
    for poly in corpus[:3]:
        report = evaluate_bounds(poly, 2.0, CFG)
        assert not any(c.status == "fail" for c in report.checks)
        assert report.q == 2.0


def test_refined_isoperimetric_regular_equality():
    reg = regular_polygon(5, 1.7)
    res = refined_isoperimetric_check(reg, 2.0, CFG)
    assert res["pass"]
    assert res["lhs"] == pytest.approx(res["rhs"], rel=1e-9)


def test_refined_isoperimetric_triangles_are_equality_cases():
    # Triangles are circumscribed, so gamma^(-q) exactly compensates
    # the perimeter ratio: the refined inequality is tight for every k.
    for k in (0.4, 2.0, 7.0):
        res = refined_isoperimetric_check(isosceles_T(k), 2.0, CFG)
        assert res["pass"]
        assert res["lhs"] == pytest.approx(res["rhs"], rel=1e-10)


def test_refined_isoperimetric_strict_for_stadium(rect_3x2):
    res = refined_isoperimetric_check(rect_3x2, 2.0, CFG)
    assert res["pass"]
    # not circumscribed: the inequality is strict with visible margin
    assert res["lhs"] < res["rhs"] * 0.999


def test_refined_isoperimetric_corpus(corpus):
    for poly in corpus[:25]:
        for p in (1.5, 2.0, 4.0):
            assert refined_isoperimetric_check(poly, p, CFG)["pass"]


def test_conjecture_verdict_T2():
    verdict = conjecture_verdict(isosceles_T(2.0), 2.0, CFG, with_fem=True)
    assert verdict.certified
    assert verdict.gamma == pytest.approx(1.39315, abs=1e-5)
    assert verdict.threshold == pytest.approx(1.054, abs=2e-3)
    assert verdict.fem_comparison["consistent"]
    assert (verdict.fem_comparison["tau_omega"]
            < verdict.fem_comparison["tau_regular"])


def test_conjecture_verdict_near_equilateral_not_certified():
    verdict = conjecture_verdict(isosceles_T(1.1), 2.0, CFG)
    assert not verdict.certified
    assert verdict.gamma < verdict.threshold


def test_conjecture_verdict_regular_vacuous():
    verdict = conjecture_verdict(regular_polygon(5, 1.0), 2.0, CFG)
    assert not verdict.certified
    assert verdict.gamma == pytest.approx(1.0, abs=1e-10)


def test_triangle_threshold_roots():
    k_low, k_high = triangle_threshold_roots()
    assert k_low == pytest.approx(0.760, abs=1e-3)
    assert k_high == pytest.approx(1.301, abs=1e-3)

    def f(k):
        return 2 * math.sqrt(10) * k ** 3 - 10 * k ** 2 + 3

    assert abs(f(k_low)) < 1e-8
    assert abs(f(k_high)) < 1e-8
    # the roots bracket exactly the non-certified k-interval
    for k, inside in ((0.7, False), (0.8, True), (1.25, True), (1.35, False)):
        verdict = conjecture_verdict(isosceles_T(k), 2.0, CFG)
        assert verdict.certified != inside


def test_functional_dilation_invariance(skew_quad):
    report_1 = evaluate_bounds(skew_quad, 2.0, CFG)
    scaled = from_vertices(np.asarray(skew_quad.vertices) * 3.7)
    report_2 = evaluate_bounds(scaled, 2.0, CFG)
    assert report_2.perimeter_functional_web == pytest.approx(
        report_1.perimeter_functional_web, rel=1e-10)
    assert report_2.inradius_functional_web == pytest.approx(
        report_1.inradius_functional_web, rel=1e-10)
    # FEM functionals agree within their error bars
    assert report_2.perimeter_functional_torsion == pytest.approx(
        report_1.perimeter_functional_torsion, rel=1e-2)
