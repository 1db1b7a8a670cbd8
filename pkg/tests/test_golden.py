import math

import pytest

from fibtools.errors import PreconditionError
from fibtools.golden import (
    KEOPS,
    PHI,
    PyramidDims,
    Rect,
    convergent,
    deg_min,
    golden_constants,
    golden_rectangle_trace,
    golden_section_point,
    golden_spiral_params,
    nested_radical,
    pyramid_metrics,
    rect_subdivide,
    spiral_radius,
)
from fibtools.sequence import fib

ULP = math.ulp(PHI)


def test_constants():
    c = golden_constants()
    assert str(c.phi).startswith("1.61803398")
    assert abs(c.phi**2 - c.phi - 1) <= 4 * ULP
    assert abs(1 / c.phi - (c.phi - 1)) <= 4 * ULP
    assert abs(c.phi * c.psi + 1) <= 4 * ULP
    assert abs(c.phi + c.psi - 1) <= 4 * ULP
    assert abs(c.phi - c.psi - c.sqrt5) <= 4 * ULP
    assert c.binet_a1 == -c.binet_a2


def test_phi_powers():
    for n in range(1, 21):
        expected = fib(n) * PHI + fib(n - 1)
        assert math.isclose(PHI**n, expected, rel_tol=1e-10)


def test_convergents():
    assert convergent(1) == 2
    assert (convergent(4).numerator, convergent(4).denominator) == (8, 5)
    assert (convergent(10).numerator, convergent(10).denominator) == (144, 89)
    for k in range(1, 41):
        c = convergent(k)
        assert (c.numerator, c.denominator) == (fib(k + 2), fib(k + 1))
    # error sign and magnitude via exact comparison against phi's equation
    from decimal import Decimal, getcontext

    getcontext().prec = 60
    phi = (1 + Decimal(5).sqrt()) / 2
    errs = [Decimal(convergent(k).numerator) / Decimal(convergent(k).denominator) - phi for k in range(1, 41)]
    for a, b in zip(errs, errs[1:]):
        assert abs(b) < abs(a)
        assert (a > 0) != (b > 0)
    with pytest.raises(PreconditionError):
        convergent(0)


def test_nested_radical():
    assert math.isclose(nested_radical(1), math.sqrt(2), rel_tol=1e-15)
    assert abs(nested_radical(30) - PHI) < 1e-9
    res = [abs(nested_radical(k) - PHI) for k in range(1, 31)]
    assert all(b < a for a, b in zip(res, res[1:]))


def test_golden_section():
    c = golden_section_point(0.0, 1.0)
    assert math.isclose(c, 0.6180339887, abs_tol=1e-10)
    ab, ac, cb = 1.0, c, 1.0 - c
    assert math.isclose(ab / ac, PHI, rel_tol=1e-12)
    assert math.isclose(ac / cb, PHI, rel_tol=1e-12)
    assert math.isclose(golden_section_point(0.0, PHI), 1.0, rel_tol=1e-12)
    assert math.isclose(golden_section_point(3.0, 8.0) - 3.0, 5.0 / PHI, rel_tol=1e-12)
    with pytest.raises(PreconditionError):
        golden_section_point(2.0, 2.0)


def test_rect_subdivide():
    square, rest = rect_subdivide(Rect(PHI, 1.0))
    assert (square.width, square.height) == (1.0, 1.0)
    assert math.isclose(rest.width, 1.0) and math.isclose(rest.height, PHI - 1)
    rect = Rect(PHI, 1.0)
    for _ in range(10):
        area = rect.area
        _, rect = rect_subdivide(rect)
        assert abs(rect.ratio - PHI) < 1e-6
        assert abs(area / rect.area - PHI**2) < 1e-9


def test_rect_rejects_non_golden():
    with pytest.raises(PreconditionError, match="2.0"):
        rect_subdivide(Rect(2.0, 1.0))


def test_rectangle_trace_corners():
    pts = golden_rectangle_trace(PHI, 8)
    assert len(pts) == 9
    assert pts[1] == (1.0, 1.0)
    # Successive chord lengths shrink by phi per quarter turn.
    d = [math.dist(a, b) for a, b in zip(pts, pts[1:])]
    for a, b in zip(d, d[1:]):
        assert math.isclose(a / b, PHI, rel_tol=1e-9)


def test_spiral():
    p = golden_spiral_params()
    assert math.isclose(p.c, (2 / math.pi) * math.log(1.6180339887), rel_tol=1e-9)
    assert str(p.c).startswith("0.306348")
    assert abs(p.tangent_angle_deg - 72.97) < 0.05
    assert round(p.tangent_angle_deg) == 73
    assert spiral_radius(p, 0.0) == p.k
    for theta in (0.0, 0.3, 1.0, 5.0, 12.5):
        ratio = spiral_radius(p, theta + math.pi / 2) / spiral_radius(p, theta)
        assert abs(ratio - PHI) <= 1e-12 * PHI


def test_deg_min():
    assert deg_min(38.1727) == "38°10'"
    assert deg_min(51.8273) == "51°50'"
    assert deg_min(10.9999) == "11°00'"


def test_pyramid_unit():
    r = pyramid_metrics()
    assert abs(r.half_base_ratio - 0.618034) < 1e-6
    assert abs(r.height_ratio - 0.78615) < 1e-5
    assert abs(0.618034 / 0.78615 - 0.78615) < 1e-4
    assert abs(r.self_ratio - r.height_ratio) < 1e-12
    assert abs(r.four_height - 3.1446) < 1e-4
    assert abs(r.four_height - math.pi) < 0.004
    assert r.apex_angle_dm == "38°10'" and r.base_angle_dm == "51°50'"
    assert abs(r.perimeter - 4.9443) < 1e-4
    assert abs(r.circumference - 4.9395) < 1e-4
    assert 0.0005 < r.perimeter_discrepancy < 0.005


def test_pyramid_keops():
    r = pyramid_metrics(KEOPS)
    assert abs(r.half_base_ratio - 0.61799) < 1e-4
    assert abs(r.half_base_ratio - 0.618034) < 1e-4
    assert abs(r.height_ratio - 0.78615) < 1e-3
    assert "half_base_ratio: " in r.render()


def test_pyramid_rejects_non_triangle():
    with pytest.raises(PreconditionError):
        PyramidDims(1.0, 1.0, 2.0)
    with pytest.raises(PreconditionError):
        PyramidDims(-1.0, 1.0, 1.0)
