import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspelastic import geometry as g
from cuspelastic.errors import DomainError, GeometryError, InputError, SingularityError
from cuspelastic.geometry import ArcKind, CircleId, LensDomain, Point2, PointClass

S3 = math.sqrt(3.0)


def close(p, q, tol=1e-12):
    return all(abs(a - b) <= tol for a, b in zip(p, q))


@pytest.mark.parametrize(
    "c, theta, want",
    [(1.0, 0.0, (2.0, 0.0)), (1.0, math.pi / 4, (1.0, 1.0)), (2.0, math.pi / 2, (0.0, 0.0))],
)
def test_circle_point(c, theta, want):
    assert close(g.circle_point(c, theta), want)


def test_circle_point_cusp_is_exact():
    assert g.circle_point(2.0, -math.pi / 2) == (0.0, 0.0)


def test_circle_point_rejects_wide_angle():
    with pytest.raises(InputError):
        g.circle_point(1.0, 2.0)


@pytest.mark.parametrize("p, c", [((1.0, 1.0), 1.0), ((2.0, 0.0), 1.0)])
def test_circle_of_point(p, c):
    assert g.circle_of_point(Point2(*p)) == pytest.approx(c, abs=1e-14)


def test_circle_of_point_off_family():
    with pytest.raises(DomainError):
        g.circle_of_point(Point2(0.0, 0.5))


@pytest.mark.parametrize(
    "p, want",
    [
        ((1.0, 1.0), PointClass.INNER_BOUNDARY),
        ((3.0, 0.0), PointClass.INTERIOR),
        ((0.0, 0.0), PointClass.CUSP),
        ((4.0, 0.0), PointClass.OUTER_BOUNDARY),
        ((5.0, 0.0), PointClass.EXTERIOR),
        ((1.0, 0.0), PointClass.EXTERIOR),
        ((-1.0, 0.0), PointClass.EXTERIOR),
    ],
)
def test_classify(p, want):
    assert g.classify(LensDomain(2.0), Point2(*p)) is want


def test_lens_domain_validation():
    with pytest.raises(InputError):
        LensDomain(1.0)
    with pytest.raises(InputError):
        LensDomain(2.0, -1.0)


def test_circle_id_displaced_center():
    c = CircleId(1.0, 0.5)
    p = g.circle_point(c, 0.0)
    assert g.psi(c, p) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize(
    "p, r, theta, rho, phi",
    [
        ((1.0, 1.0), math.sqrt(2), math.pi / 4, 1.0, math.pi / 2),
        ((2.0, 0.0), 2.0, 0.0, 1.0, 0.0),
        ((0.5, S3 / 2), 1.0, math.pi / 3, 1.0, 2 * math.pi / 3),
    ],
)
def test_polar_maps(p, r, theta, rho, phi):
    pol, (rh, ph) = g.polar_maps(Point2(*p))
    assert pol.r == pytest.approx(r, abs=1e-12)
    assert pol.theta == pytest.approx(theta, abs=1e-12)
    assert rh == pytest.approx(rho, abs=1e-12)
    assert ph == pytest.approx(phi, abs=1e-12)


def test_polar_maps_errors():
    with pytest.raises(SingularityError):
        g.polar_maps(Point2(0.0, 0.0))
    with pytest.raises(DomainError):
        g.polar_maps(Point2(-1.0, 1.0))


def test_intersection_inner_a1():
    s = g.intersection_points(2.0, 1.0, 1.0)
    assert close(s.D, (0.5, 0.8660254037844386))
    assert math.tan(s.theta_D) == pytest.approx(S3, rel=1e-12)


def test_intersection_outer_a1():
    s = g.intersection_points(2.0, 1.0, 1.0)
    assert close(s.A, (0.25, 0.9682458365518543))
    assert math.tan(s.theta_A) == pytest.approx(math.sqrt(15.0), rel=1e-12)


def test_intersection_tangent_degenerate():
    s = g.intersection_points(2.0, 1.0, 2.0)
    assert close(s.D, (2.0, 0.0))
    assert s.theta_D == 0.0


def test_intersection_errors():
    with pytest.raises(GeometryError):
        g.intersection_points(2.0, 1.0, 2.5)
    with pytest.raises(InputError):
        g.intersection_points(1.0, 2.0, 0.5)


@pytest.mark.parametrize(
    "p, t", [((0.0, 0.0), (0.0, 1.0)), ((2.0, 0.0), (0.0, -1.0)), ((1.0, 1.0), (1.0, 0.0))]
)
def test_unit_tangent(p, t):
    assert close(g.unit_tangent(1.0, Point2(*p)), t)


def test_unit_tangent_off_circle():
    with pytest.raises(InputError):
        g.unit_tangent(1.0, Point2(3.0, 0.0))


def _arc(kind, arcs):
    return next(a for a in arcs if a.kind is kind)


def test_outward_normals():
    arcs = g.punctured_arcs(1.0, 2.0, 1.0)
    assert close(g.outward_normal(_arc(ArcKind.OUTER, arcs), 0.0), (1.0, 0.0))
    assert close(g.outward_normal(_arc(ArcKind.INNER, arcs), 0.0), (-1.0, 0.0))
    assert close(g.outward_normal(_arc(ArcKind.BALL_UPPER, arcs), math.pi / 3), (-0.5, -S3 / 2))


def test_outward_normal_range():
    arc = _arc(ArcKind.INNER, g.punctured_arcs(1.0, 2.0, 1.0))
    with pytest.raises(InputError):
        g.outward_normal(arc, 1.5)


def test_punctured_boundary_a1():
    arcs = g.punctured_boundary(LensDomain(2.0), 1.0)
    assert len(arcs) == 4
    outer = _arc(ArcKind.OUTER, arcs)
    assert math.tan(outer.theta_start) == pytest.approx(math.sqrt(15.0), rel=1e-12)
    assert outer.theta_end == -outer.theta_start
    s = g.intersection_points(2.0, 1.0, 1.0)
    up = _arc(ArcKind.BALL_UPPER, arcs)
    low = _arc(ArcKind.BALL_LOWER, arcs)
    assert (up.theta_lo, up.theta_hi) == pytest.approx((s.theta_D, s.theta_A))
    assert (low.theta_lo, low.theta_hi) == pytest.approx((s.theta_B, s.theta_C))


def test_punctured_boundary_small_a_opens_to_half_pi():
    outer = _arc(ArcKind.OUTER, g.punctured_boundary(LensDomain(2.0), 1e-6))
    assert outer.theta_start == pytest.approx(math.pi / 2, abs=1e-6)


def test_punctured_boundary_rejects_large_a():
    with pytest.raises(GeometryError):
        g.punctured_boundary(LensDomain(2.0), 2.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(1.0, 5.0), st.floats(-1.5, 1.5))
def test_circle_point_roundtrip(c, theta):
    p = g.circle_point(c, theta)
    assert g.psi(c, p) == pytest.approx(1.0, abs=1e-12)
    assert g.circle_of_point(p) == pytest.approx(c, rel=1e-10)
    t = g.unit_tangent(c, p)
    assert math.hypot(*t) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 1.9), st.floats(1.1, 3.0))
def test_normals_are_unit_and_point_out(a, R):
    for arc in g.punctured_arcs(1.0, R, a):
        if arc.theta_hi - arc.theta_lo < 1e-9:
            continue
        th = 0.5 * (arc.theta_lo + arc.theta_hi)
        n = g.outward_normal(arc, th)
        assert math.hypot(*n) == pytest.approx(1.0, abs=1e-12)
        x = arc.point(th)
        probe = Point2(x[0] + 1e-6 * n[0], x[1] + 1e-6 * n[1])
        c = g.circle_of_point(probe)
        outside = c < 1.0 or c > R or math.hypot(*probe) < a
        assert outside
