import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from spinhall.errors import AntipodalPairError, DegeneratePathError, GaugeSingularityError
from spinhall.functionals import (ConstantColatitudeCircle, GreatCircle, Loxodrome,
                                  MomentumPath, berry_phase, hall_shift, kinematic_path,
                                  solid_angle)

colatitudes = st.floats(0.1, math.pi - 0.1)


def circle(theta0, n=4096, p0=1.0, turns=1):
    return kinematic_path(ConstantColatitudeCircle(theta0, p0, turns), n)


def test_equator_phase_zero():
    assert abs(berry_phase(circle(math.pi / 2, 256)).gamma) <= 1e-12


def test_circle_phase_and_reverse():
    path = circle(math.pi / 3, 256)
    assert berry_phase(path).gamma == pytest.approx(math.pi, abs=1e-9)
    assert berry_phase(path.reversed()).gamma == pytest.approx(-math.pi, abs=1e-9)


def test_circle_phase_against_dense_quadrature():
    # cos(theta) dphi integrated on a 10^5 grid with a plain Riemann sum
    theta0 = 0.7
    phi = np.linspace(0, 2 * math.pi, 100_001)
    dense = np.sum(np.cos(theta0) * np.diff(phi))
    assert berry_phase(circle(theta0)).gamma == pytest.approx(dense, abs=1e-9)


@pytest.mark.parametrize("theta0", [math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3])
def test_gauge_invariant_cross_check(theta0):
    bp = berry_phase(circle(theta0))
    assert bp.winding == 1 and not bp.gauge_dependent
    cap = 2 * math.pi * (1 - math.cos(theta0))
    assert abs(math.remainder(bp.solid_angle - cap, 4 * math.pi)) <= 1e-6
    assert -2 * math.pi < bp.solid_angle <= 2 * math.pi
    assert abs(bp.residual) <= 1e-6


def test_two_turns():
    bp = berry_phase(circle(math.pi / 4, 8192, turns=2))
    assert bp.winding == 2
    assert bp.gamma == pytest.approx(4 * math.pi * math.cos(math.pi / 4), abs=1e-9)
    assert abs(bp.residual) <= 1e-6


def test_open_path_flagged():
    bp = berry_phase(kinematic_path(Loxodrome(0.5, 1.5, 1.0), 256))
    assert bp.gauge_dependent and bp.invariant is None and bp.residual is None


def test_loxodrome_closed_form():
    # on a rhumb line dphi = k dtheta/sin(theta), so the integral is k ln(sin te / sin ts)
    ts, te, turns = 0.4, 2.2, 1.5
    merc = math.log(math.tan(te / 2)) - math.log(math.tan(ts / 2))
    k = 2 * math.pi * turns / merc
    exact = k * math.log(math.sin(te) / math.sin(ts))
    path = kinematic_path(Loxodrome(ts, te, turns), 20000)
    assert berry_phase(path).gamma == pytest.approx(exact, rel=1e-6)


def test_phase_pole_guard():
    path = MomentumPath.from_samples([[1e-4, 0, 1], [0, 1e-4, 1], [-1e-4, 0, 1], [1e-4, 0, 1]])
    with pytest.raises(GaugeSingularityError):
        berry_phase(path)


def test_degenerate_paths():
    with pytest.raises(DegeneratePathError):
        berry_phase(MomentumPath(np.array([[1.0, 0, 0], [0, 1, 0]])))
    with pytest.raises(DegeneratePathError):
        hall_shift(MomentumPath(np.array([[1.0, 0, 0], [0, 1, 0]])), 1)
    with pytest.raises(DegeneratePathError):
        MomentumPath(np.array([[1.0, 0, 0], [0, 0, 0], [0, 1, 0]]))
    with pytest.raises(DegeneratePathError):
        MomentumPath(np.array([[1.0, 0, 0], [0, 1, 0], [0, 0, 1]]), closed=True)
    with pytest.raises(ValueError):
        hall_shift(circle(1.0, 64), 0)


def test_hall_equator_loop():
    got = hall_shift(circle(math.pi / 2, 10_000), 1)
    assert np.allclose(got, (0, 0, 2 * math.pi), rtol=1e-8, atol=1e-12)


@pytest.mark.parametrize("theta0, p0", [(math.pi / 3, 2.0), (2.5, 0.5), (1.0, 1.0)])
def test_hall_loop_closed_form(theta0, p0):
    exact = np.array([0, 0, 2 * math.pi * math.sin(theta0) ** 2 / p0])
    path = circle(theta0, 10_000, p0)
    plus, minus = hall_shift(path, 1), hall_shift(path, -1)
    assert np.linalg.norm(plus - exact) <= 1e-8 * np.linalg.norm(exact)
    assert np.array_equal(minus, -plus)


def test_hall_against_brute_force():
    # plain chord-midpoint rule with 10^5 samples on an open tilted arc
    def arc(n):
        t = np.linspace(0, 1.3, n)
        return np.column_stack([np.cos(t), np.sin(t), 0.4 + 0.3 * t])

    dense = arc(100_000)
    mid = 0.5 * (dense[1:] + dense[:-1])
    brute = np.sum(np.cross(mid, np.diff(dense, axis=0))
                   / np.linalg.norm(mid, axis=1)[:, None] ** 3, axis=0)
    got = hall_shift(MomentumPath(arc(2000)), 1)
    assert np.linalg.norm(got - brute) <= 1e-8 * np.linalg.norm(brute)


def test_great_circle_arc_and_reverse_cancels():
    t = np.linspace(0, 2.0, 200)
    arc = np.column_stack([np.cos(t), np.sin(t) * 0.6, np.sin(t) * 0.8])
    there_and_back = MomentumPath(np.vstack([arc, arc[-2::-1]]))
    assert np.abs(hall_shift(there_and_back, 1)).max() <= 1e-12


def test_convergence_order():
    # rytov on a tilted loop (non-constant theta) and hall on an open arc
    rot = Rotation.from_rotvec([0.5, 0.2, 0]).as_matrix()
    exact_g = 2 * math.pi - 2 * math.pi * (1 - math.cos(0.8))

    def errors(n):
        path = circle(0.8, n).rotated(rot)
        bp = berry_phase(path)
        return abs(math.remainder(bp.gamma - exact_g, 4 * math.pi))

    e1, e2 = errors(512), errors(1024)
    assert 3.5 <= e1 / e2 <= 4.5
    exact_h = 2 * math.pi * math.sin(0.8) ** 2
    h1 = abs(hall_shift(circle(0.8, 64), 1)[2] - exact_h)
    h2 = abs(hall_shift(circle(0.8, 128), 1)[2] - exact_h)
    # the cubic midpoint reconstruction converges at least as fast as O(n^-2)
    assert h1 / h2 >= 4.0


@settings(max_examples=25, deadline=None)
@given(colatitudes, st.floats(0.1, 10))
def test_phase_scale_invariant_and_hall_scaling(theta0, factor):
    path = circle(theta0, 512)
    scaled = path.scaled(factor)
    assert berry_phase(scaled).gamma == pytest.approx(berry_phase(path).gamma, abs=1e-12)
    expected = hall_shift(path, 1) / factor
    assert np.abs(hall_shift(scaled, 1) - expected).max() <= 1e-12 * np.linalg.norm(expected)


@settings(max_examples=25, deadline=None)
@given(colatitudes)
def test_reversal_antisymmetry(theta0):
    path = kinematic_path(Loxodrome(theta0, math.pi - theta0 if theta0 != math.pi / 2 else 1.0,
                                    0.7), 300)
    back = path.reversed()
    assert berry_phase(back).gamma == pytest.approx(-berry_phase(path).gamma, abs=1e-12)
    assert np.allclose(hall_shift(back, 1), -hall_shift(path, 1), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 2.9), st.lists(st.floats(-math.pi, math.pi), min_size=3, max_size=3))
def test_solid_angle_rotation_covariance(theta0, rotvec):
    path = circle(theta0, 512)
    rot = Rotation.from_rotvec(rotvec).as_matrix()
    assert solid_angle(path.rotated(rot)) == pytest.approx(solid_angle(path), abs=1e-9)


def test_solid_angle_equator_and_cap():
    assert solid_angle(circle(math.pi / 2, 256)) == pytest.approx(2 * math.pi, abs=1e-9)
    assert solid_angle(circle(math.pi / 3, 4096)) == pytest.approx(math.pi, abs=1e-6)
    assert solid_angle(circle(math.pi / 3, 4096).reversed()) == pytest.approx(-math.pi, abs=1e-6)


def test_solid_angle_tiny_triangle():
    a = 1e-4
    verts = np.array([[a, 0, 1], [0, a, 1], [-0.5 * a, -0.3 * a, 1], [a, 0, 1]])
    planar = 0.5 * np.linalg.norm(np.cross(verts[1] - verts[0], verts[2] - verts[0]))
    got = solid_angle(MomentumPath(verts, True))
    assert got == pytest.approx(planar, rel=1e-8)


def test_solid_angle_antipodal():
    with pytest.raises(AntipodalPairError):
        solid_angle(MomentumPath(np.array([[1.0, 0, 0], [-1, 0, 0], [0, 1, 0], [1, 0, 0]]), True))


def test_kinematic_circle():
    path = circle(math.pi / 3, 256)
    assert path.closed and len(path) == 256
    assert np.abs(np.linalg.norm(path.samples, axis=1) - 1).max() <= 1e-15


@pytest.mark.parametrize("alpha", [0.0, 0.3, 1.2])
def test_great_circle_solid_angle(alpha):
    axis = (math.sin(alpha), 0, math.cos(alpha))
    path = kinematic_path(GreatCircle(axis, 1.0), 1024)
    assert abs(solid_angle(path)) == pytest.approx(2 * math.pi, abs=1e-9)
    assert abs(berry_phase(path).residual) <= 1e-5


def test_loxodrome_endpoints():
    path = kinematic_path(Loxodrome(0.3, 2.0, 2.0, 1.5), 64)
    s = path.samples
    assert math.acos(s[0, 2] / 1.5) == pytest.approx(0.3, abs=1e-12)
    assert math.acos(s[-1, 2] / 1.5) == pytest.approx(2.0, abs=1e-12)
    assert not path.closed


@pytest.mark.parametrize("kind", [ConstantColatitudeCircle(1e-4), ConstantColatitudeCircle(1.0, 0),
                                  Loxodrome(0.5, 0.5), GreatCircle((1, 0, 0))])
def test_kinematic_path_rejects(kind):
    with pytest.raises(ValueError):
        kinematic_path(kind, 64)


def test_kinematic_path_min_samples():
    with pytest.raises(ValueError):
        kinematic_path(ConstantColatitudeCircle(1.0), 8)
    with pytest.raises(TypeError):
        kinematic_path(object(), 64)


def test_from_samples_detects_closure():
    s = circle(1.0, 64).samples
    assert MomentumPath.from_samples(s).closed
    assert not MomentumPath.from_samples(s[:-1]).closed
