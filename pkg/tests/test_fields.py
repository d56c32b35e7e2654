import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspelastic import fields as f
from cuspelastic import geometry
from cuspelastic.errors import SingularityError
from cuspelastic.geometry import Point2

S3 = math.sqrt(3.0)


def vclose(got, want, tol=1e-12):
    assert len(got) == len(want)
    for x, y in zip(got, want):
        assert x == pytest.approx(y, abs=tol)


@pytest.mark.parametrize(
    "p, u", [((1.0, 1.0), (1.0, 0.0)), ((2.0, 0.0), (0.0, -1.0)), ((0.5, S3 / 2), (S3 / 2, 0.5))]
)
def test_displacement(p, u):
    vclose(f.displacement(Point2(*p)), u)


def test_displacement_singular_axis():
    with pytest.raises(SingularityError):
        f.displacement(Point2(0.0, 0.3))


@pytest.mark.parametrize(
    "c, th, u",
    [(1.0, 0.0, (0.0, -1.0)), (1.0, math.pi / 4, (1.0, 0.0)), (3.0, math.pi / 2, (0.0, 3.0))],
)
def test_displacement_on_circle(c, th, u):
    vclose(f.displacement_on_circle(c, th), u)


@pytest.mark.parametrize(
    "p, e",
    [((1.0, 1.0), (0.0, 0.0, 1.0)), ((2.0, 0.0), (0.0, 0.25, 0.0)), ((1.0, 0.5), (0.0, 0.1875, 0.5))],
)
def test_strain(p, e):
    vclose(f.strain(Point2(*p)), e)


def test_gradient_matches_finite_differences():
    from cuspelastic.numerics import derivative

    p = Point2(1.3, -0.4)
    gsample = f.gradient(p)
    d = [
        derivative(lambda t: f.displacement(Point2(t, p[1]))[0], p[0]),
        derivative(lambda t: f.displacement(Point2(p[0], t))[0], p[1]),
        derivative(lambda t: f.displacement(Point2(t, p[1]))[1], p[0]),
        derivative(lambda t: f.displacement(Point2(p[0], t))[1], p[1]),
    ]
    vclose(tuple(gsample), d, tol=1e-8)


def test_polar_components_tangential():
    pc = f.polar_components(1.0, math.pi / 6)
    assert pc.u_rho == pytest.approx(0.0, abs=1e-12)
    assert pc.u_phi == pytest.approx(-1.0, abs=1e-12)


@pytest.mark.parametrize(
    "c, th, ur, ut",
    [(2.0, 0.0, 0.0, -2.0), (1.0, math.pi / 4, math.sqrt(2) / 2, -math.sqrt(2) / 2)],
)
def test_polar_components_radial(c, th, ur, ut):
    pc = f.polar_components(c, th)
    assert pc.u_r == pytest.approx(ur, abs=1e-12)
    assert pc.u_theta == pytest.approx(ut, abs=1e-12)


@pytest.mark.parametrize(
    "p, trans, rot",
    [((1.0, 1.0), (0.0, 1.0), (1.0, -1.0)), ((2.0, 0.0), (0.0, 1.0), (0.0, -2.0)),
     ((3.0, 0.0), (0.0, 1.5), (0.0, -3.0))],
)
def test_rigid_decomposition(p, trans, rot):
    t, r = f.rigid_decomposition(Point2(*p))
    vclose(t, trans)
    vclose(r, rot)


def test_cusp_limit_and_jump():
    assert f.cusp_limit(1.0) == pytest.approx(1.0, abs=1e-6)
    assert f.cusp_jump(2.0, 1.0) == pytest.approx(1.0, abs=1e-6)
    assert f.cusp_jump(1.7, 1.7) == pytest.approx(0.0, abs=1e-6)


def test_cusp_approach_converges():
    ap = f.cusp_approach(2.5)
    assert ap.limit == pytest.approx(2.5, abs=1e-6)
    assert all(x > y for x, y in zip(ap.offsets, ap.offsets[1:]))


@pytest.mark.parametrize("c, th", [(1.0, 0.3), (2.0, -1.2), (1.5, 0.0)])
def test_circle_dilatation_vanishes(c, th):
    assert abs(f.circle_dilatation(c, th)) <= 1e-10


def test_circle_dilatation_by_differences():
    from cuspelastic.numerics import DiffConfig

    assert abs(f.circle_dilatation(1.5, 0.7, DiffConfig())) <= 1e-8


def test_circle_dilatation_singular():
    with pytest.raises(SingularityError):
        f.circle_dilatation(1.0, math.pi / 2)


def test_symtensor_helpers():
    s = f.SymTensor2(1.0, 2.0, 3.0)
    assert s.trace == 4.0
    assert s.dot((1.0, 0.0)) == (1.0, 2.0)
    assert s.contract(f.SymTensor2(1.0, 1.0, 1.0)) == 1.0 + 2 * 2.0 + 3.0


@settings(max_examples=80, deadline=None)
@given(st.floats(1.0, 4.0), st.floats(-1.55, 1.55))
def test_tangency_property(c, th):
    u = f.displacement_on_circle(c, th)
    p = geometry.circle_point(c, th)
    t = geometry.unit_tangent(c, p)
    assert math.hypot(*u) == pytest.approx(c, rel=1e-12)
    vclose(u, (c * t[0], c * t[1]), tol=1e-10 * c)
    vclose(f.displacement(p), u, tol=1e-10 * c)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(-5.0, 5.0))
def test_strain_has_no_e11(x1, x2):
    e = f.strain(Point2(x1, x2))
    assert e.t11 == 0.0
    t, r = f.rigid_decomposition(Point2(x1, x2))
    vclose((t[0] + r[0], t[1] + r[1]), f.displacement(Point2(x1, x2)), tol=1e-9 * (1 + x2 * x2 / x1))
