import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import series_sum
from sp4exp.expmap import Generator, exp_sp4
from sp4exp.linalg import det2, max_abs_diff, omega4
from sp4exp.oracle import symplectic_residual
from sp4exp.squeeze import (
    SqueezeParamError,
    SqueezeParams,
    Trajectory,
    circular_trajectory,
    correlation_matrix,
    factor_two_check,
    squeeze_b,
    squeeze_matrix,
    squeeze_matrix_from_generator,
    transform_trajectory,
)

Z = np.zeros((2, 2))

radii = st.floats(min_value=0.0, max_value=5.0)
angles = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi)
lengths = st.floats(min_value=0.1, max_value=10.0)
params = st.builds(SqueezeParams, radii, angles, lengths, lengths, lengths)


@pytest.mark.parametrize(
    "kwargs",
    [dict(r=-0.1), dict(r=1.0, l1=0.0), dict(r=1.0, l2=-1.0), dict(r=1.0, hbar=0.0), dict(r=math.nan)],
)
def test_params_validation(kwargs):
    with pytest.raises(SqueezeParamError):
        SqueezeParams(**kwargs)


@given(params)
def test_zeta_components(p):
    assert p.zeta_x**2 + p.zeta_y**2 == pytest.approx(p.r**2, abs=1e-14 * max(1.0, p.r**2))


def test_squeeze_b_zero():
    np.testing.assert_array_equal(squeeze_b(SqueezeParams(0.0, 0.3, 2.0, 0.5, 3.0)), Z)


def test_squeeze_b_unit():
    np.testing.assert_array_equal(squeeze_b(SqueezeParams(1.0, 0.0)), [[0.0, -1.0], [-1.0, 0.0]])


@given(params)
def test_squeeze_b_determinant(p):
    assert det2(squeeze_b(p)) == pytest.approx(-p.r**2, abs=1e-13 * max(1.0, p.r**2))


def test_squeeze_matrix_zero():
    np.testing.assert_array_equal(squeeze_matrix(SqueezeParams(0.0, 1.1, 0.3, 4.0, 2.0)), np.eye(4))


def test_squeeze_matrix_phi_half_pi():
    r = 0.45
    ch, sh = math.cosh(r), math.sinh(r)
    expected = np.array([
        [ch, 0, sh, 0],
        [0, ch, 0, -sh],
        [sh, 0, ch, 0],
        [0, -sh, 0, ch],
    ])
    assert max_abs_diff(squeeze_matrix(SqueezeParams(r, math.pi / 2)), expected) <= 1e-15


@given(params)
def test_squeeze_matrix_properties(p):
    ms = squeeze_matrix(p)
    # scale: entries involve l1/l2 etc. up to 1e4 when lengths span [0.1, 10]
    scale = max(1.0, np.max(np.abs(ms)))
    assert max_abs_diff(ms, exp_sp4(Generator(Z, squeeze_b(p), Z))) <= 1e-12 * scale
    assert max_abs_diff(ms, squeeze_matrix_from_generator(p)) <= 1e-12 * scale
    assert symplectic_residual(ms) <= 1e-11 * scale**2


@pytest.mark.parametrize("r", [0.0, 0.3, 0.6, 1.0, 2.0])
@pytest.mark.parametrize("phi", [0.0, math.pi / 8, math.pi / 4, math.pi / 2, 2.0])
def test_squeeze_matrix_unit_lengths(r, phi):
    p = SqueezeParams(r, phi)
    ms = squeeze_matrix(p)
    assert max_abs_diff(ms, exp_sp4(Generator(Z, squeeze_b(p), Z))) <= 1e-12
    assert symplectic_residual(ms) <= 1e-11


@given(st.floats(0.0, 2.0), st.floats(0.0, 2.0), angles, lengths, lengths, lengths)
def test_one_parameter_subgroup(r1, r2, phi, l1, l2, hbar):
    m1 = squeeze_matrix(SqueezeParams(r1, phi, l1, l2, hbar))
    m2 = squeeze_matrix(SqueezeParams(r2, phi, l1, l2, hbar))
    m12 = squeeze_matrix(SqueezeParams(r1 + r2, phi, l1, l2, hbar))
    assert max_abs_diff(m1 @ m2, m12) <= 1e-10 * max(1.0, np.max(np.abs(m12)))


@pytest.mark.parametrize("m_omega", [(1.0, 1.0), (0.5, 2.0), (3.0, 0.2)])
def test_hbar_cancels(m_omega):
    mats = [
        squeeze_matrix(SqueezeParams.from_oscillators(0.7, 0.35, hbar, *m_omega))
        for hbar in (0.1, 1.0, 10.0)
    ]
    for m in mats[1:]:
        assert max_abs_diff(m, mats[0]) <= 1e-12


def test_correlation_matrix_zero():
    np.testing.assert_array_equal(correlation_matrix(0.0), np.eye(4) / 4)


def test_correlation_matrix_entry():
    expected = series_sum(0.36, 0) / 4
    assert expected == pytest.approx(0.296366304560567, abs=1e-15)
    assert correlation_matrix(0.3)[0, 0] == pytest.approx(expected, abs=1e-15)


def test_correlation_matrix_symmetric_and_uniform_diagonal():
    v = correlation_matrix(0.8)
    np.testing.assert_array_equal(v, v.T)
    assert len(set(np.diag(v))) == 1


def test_correlation_matrix_rejects_negative():
    with pytest.raises(SqueezeParamError):
        correlation_matrix(-1.0)


@pytest.mark.parametrize("r, tol", [(0.0, 0.0), (0.3, 1e-12), (2.0, 1e-10), (5.0, 1e-12 * math.cosh(10))])
def test_factor_two(r, tol):
    assert factor_two_check(r) <= tol


def test_circular_trajectory_start():
    traj = circular_trajectory((1.0, 0.0), (0.0, 0.0), 0.0, 1.0, 5)
    np.testing.assert_array_equal(traj.samples[0], [0, 1, 0, 0, 0])


def test_circular_trajectory_quarter_turn():
    traj = circular_trajectory((1.0, 1.0), (1.0, 1.0), 0.0, math.pi / 2, 2)
    np.testing.assert_allclose(traj.points[-1], [1, -1, 1, -1], atol=1e-15)


def test_circular_trajectory_grid():
    traj = circular_trajectory((1.0, 0.0), (0.0, 1.0), 0.0, 2 * math.pi, 256)
    assert len(traj) == 256
    assert traj.t[0] == 0.0 and traj.t[-1] == 2 * math.pi
    assert len(circular_trajectory((1, 0), (0, 0), 0.0, 1.0, 2)) == 2


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_circular_trajectory_preserves_radius(q1, p1, q2, p2):
    traj = circular_trajectory((q1, q2), (p1, p2), 0.0, 10.0, 33)
    pts = traj.points
    assert np.max(np.abs(pts[:, 0] ** 2 + pts[:, 1] ** 2 - (q1**2 + p1**2))) <= 1e-13 * max(1, q1**2 + p1**2)
    assert np.max(np.abs(pts[:, 2] ** 2 + pts[:, 3] ** 2 - (q2**2 + p2**2))) <= 1e-13 * max(1, q2**2 + p2**2)


def test_circular_trajectory_validation():
    with pytest.raises(ValueError):
        circular_trajectory((1, 0), (0, 0), 0.0, 1.0, 1)
    with pytest.raises(ValueError):
        circular_trajectory((1, 0), (0, 0), 1.0, 1.0, 5)


def test_trajectory_rejects_non_increasing_time():
    with pytest.raises(ValueError):
        Trajectory(np.array([[0.0, 1, 2, 3, 4], [0.0, 1, 2, 3, 4]]))


def test_transform_identity():
    traj = circular_trajectory((1.0, 0.5), (0.2, -1.0), 0.0, 3.0, 17)
    np.testing.assert_array_equal(transform_trajectory(traj, np.eye(4)).samples, traj.samples)
    same = transform_trajectory(traj, squeeze_matrix(SqueezeParams(0.0, 0.7)))
    np.testing.assert_array_equal(same.samples, traj.samples)


def test_transform_mode_two_at_rest():
    r = 0.6
    traj = circular_trajectory((1.0, 0.0), (0.0, 0.0), 0.0, 2 * math.pi, 256)
    out = transform_trajectory(traj, squeeze_matrix(SqueezeParams(r, 0.0)))
    radius = np.hypot(out.points[:, 0], out.points[:, 1])
    assert np.max(radius) == pytest.approx(1.1854652182422676, abs=1e-12)
    np.testing.assert_allclose(out.points[:, :2], math.cosh(r) * traj.points[:, :2], rtol=0, atol=1e-15)


@given(params)
def test_transform_preserves_two_form(p):
    M = squeeze_matrix(p)
    scale = max(1.0, np.max(np.abs(M))) ** 2
    traj = circular_trajectory((0.3, -1.2), (0.8, 0.4), 0.0, 2.0, 6)
    out = transform_trajectory(traj, M)
    W = omega4()
    for i in range(len(traj)):
        for j in range(i + 1, len(traj)):
            u, v = traj.points[i], traj.points[j]
            mu, mv = out.points[i], out.points[j]
            assert abs(mu @ W @ mv - u @ W @ v) <= 1e-10 * scale
