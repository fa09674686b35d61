"""Compiled and pure integration kernels must agree sample for sample."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saucer import kernels
from saucer.kernels import pure

compiled = pytest.importorskip("saucer._kernels") \
    if kernels.BACKEND == "compiled" else None

ctrl = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)
coord = st.floats(-1.5, 1.5, allow_nan=False, allow_infinity=False)


def test_backend_label():
    assert kernels.BACKEND in ("compiled", "python")


@given(st.integers(0, 3), coord, coord, ctrl, ctrl, ctrl)
@settings(max_examples=60, deadline=None)
def test_velocity_backend_parity(mode, a, b, u1, u2, u3):
    if compiled is None:
        pytest.skip("compiled backend unavailable")
    p = np.array([0.1, -0.2, 0.3, a, b])
    v_py = pure.velocity(mode, p, u1, u2, u3)
    v_c = np.asarray(compiled.velocity(mode, p, u1, u2, u3))
    np.testing.assert_allclose(v_c, v_py, atol=1e-14)


def test_rk4_backend_parity():
    if compiled is None:
        pytest.skip("compiled backend unavailable")
    p0 = np.array([0.1, -0.2, 0.3, 0.4, -0.5])
    for mode in range(4):
        out_py = pure.rk4_constant(mode, p0, 0.7, -0.4, 0.3, 1.0, 200)
        out_c = np.asarray(compiled.rk4_constant(mode, p0, 0.7, -0.4, 0.3, 1.0, 200))
        assert out_py.shape == (201, 5)
        np.testing.assert_allclose(out_c, out_py, atol=1e-13)


def test_rk4_negative_duration_reverses_flow():
    p0 = np.array([0.0, 0.0, 0.0, 0.0, 0.0])
    fwd = kernels.rk4_constant(kernels.ATTACKING, p0, 1.0, 0.5, 0.0, 0.5, 50)
    back = kernels.rk4_constant(kernels.ATTACKING, np.asarray(fwd)[-1],
                                1.0, 0.5, 0.0, -0.5, 50)
    np.testing.assert_allclose(np.asarray(back)[-1], p0, atol=1e-12)


def test_mode_validation():
    p0 = np.zeros(5)
    with pytest.raises(ValueError):
        kernels.velocity(7, p0, 1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        kernels.rk4_constant(-1, p0, 1.0, 0.0, 0.0, 1.0, 10)
    with pytest.raises(ValueError):
        kernels.rk4_constant(0, p0, 1.0, 0.0, 0.0, 1.0, 0)


def test_attacking_velocity_law():
    p = np.array([0.0, 0.0, 0.0, 0.5, -0.3])
    v = np.asarray(kernels.velocity(kernels.ATTACKING, p, 2.0, -1.0, 0.7))
    c = np.array([3 * 2.0 * 0.7, -1.0 * 0.7, 2.0, -1.0])
    expected = np.array([c[0], c[1], c[0] * 0.5 + c[1] * (-0.3), c[3], -3 * c[2]])
    np.testing.assert_allclose(v, expected, atol=1e-14)


def test_g2_strict_velocity_is_cubic_cone_direction():
    p = np.zeros(5)
    t = 0.8
    v = np.asarray(kernels.velocity(kernels.G2_STRICT, p, 1.5, t, 0.0))
    c = 1.5 * np.array([1.0, t, t ** 2, t ** 3])
    expected = np.array([c[0], c[1], 0.0, c[3], -3 * c[2]])
    np.testing.assert_allclose(v, expected, atol=1e-14)
