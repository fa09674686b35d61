"""The quartic invariant, its polarization, and the Sym^3 group action."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saucer import gl2

comp = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
vec4 = st.tuples(comp, comp, comp, comp).map(np.array)
mat2 = st.tuples(comp, comp, comp, comp).map(
    lambda q: np.array(q).reshape(2, 2))


def _invertible(alpha, floor=0.1):
    return abs(np.linalg.det(alpha)) > floor


@given(vec4)
@settings(max_examples=120, deadline=None)
def test_quartic_routes_agree(X):
    lhs = gl2.quartic_upsilon(X)
    rhs = gl2.quartic_upsilon_det(X)
    scale = max(1.0, np.linalg.norm(X) ** 4)
    assert abs(lhs - rhs) <= 1e-10 * scale


@given(vec4)
@settings(max_examples=80, deadline=None)
def test_endomorphism_spinor_route(X):
    closed = gl2.endomorphism_L(X)
    spinor = gl2.endomorphism_L_spinor(X)
    np.testing.assert_allclose(spinor, closed,
                               atol=1e-12 * max(1.0, np.linalg.norm(X) ** 2))
    assert abs(np.trace(closed)) < 1e-12 * max(1.0, np.linalg.norm(X) ** 2)


@given(vec4)
@settings(max_examples=60, deadline=None)
def test_polarization_diagonal(X):
    diag = gl2.upsilon_polarized(X, X, X, X)
    scale = max(1.0, np.linalg.norm(X) ** 4)
    assert abs(diag - gl2.quartic_upsilon(X)) <= 1e-8 * scale


def test_polarization_is_symmetric():
    rng = np.random.default_rng(11)
    args = [rng.normal(size=4) for _ in range(4)]
    base = gl2.upsilon_polarized(*args)
    shuffled = gl2.upsilon_polarized(args[2], args[0], args[3], args[1])
    assert abs(base - shuffled) < 1e-10


def test_upsilon_tensor_matches_quartic_and_is_symmetric():
    T = gl2.UPSILON_TENSOR
    assert T.shape == (4, 4, 4, 4)
    for perm in ((1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2), (3, 2, 1, 0)):
        np.testing.assert_allclose(np.transpose(T, perm), T, atol=0)
    rng = np.random.default_rng(5)
    for _ in range(20):
        X = rng.normal(size=4)
        quad = np.einsum("ijkl,i,j,k,l->", T, X, X, X, X)
        assert abs(quad - gl2.quartic_upsilon(X)) < 1e-9


@given(mat2, mat2)
@settings(max_examples=60, deadline=None)
def test_action_is_a_homomorphism(alpha, beta):
    if not (_invertible(alpha) and _invertible(beta)):
        return
    lhs = gl2.gl2_action(alpha @ beta)
    rhs = gl2.gl2_action(alpha) @ gl2.gl2_action(beta)
    np.testing.assert_allclose(lhs, rhs, atol=1e-8 * max(1.0, np.abs(rhs).max()))


@given(mat2, vec4)
@settings(max_examples=60, deadline=None)
def test_quartic_is_relative_invariant(alpha, X):
    if not _invertible(alpha):
        return
    rho = gl2.gl2_action(alpha)
    lhs = gl2.quartic_upsilon(rho @ X)
    rhs = np.linalg.det(alpha) ** 6 * gl2.quartic_upsilon(X)
    scale = max(1.0, abs(rhs), np.abs(rho @ X).max() ** 4)
    assert abs(lhs - rhs) <= 1e-8 * scale


def test_action_derivative_is_leibniz_linearization():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(2, 2))
    eps = 1e-6
    plus = gl2.gl2_action(np.eye(2) + eps * A)
    minus = gl2.gl2_action(np.eye(2) - eps * A)
    quotient = (plus - minus) / (2 * eps)
    np.testing.assert_allclose(gl2.gl2_action_derivative(A), quotient,
                               atol=1e-8)


def test_classification_on_the_variety():
    assert gl2.classify_direction(gl2.cubic_point(0.7)) is gl2.NullClass.TYPE_N
    assert gl2.classify_direction(
        gl2.tangent_point(0.7, 1.3)) is gl2.NullClass.TYPE_II
    assert gl2.classify_direction(
        np.array([1.0, 0.0, 0.0, 1.0])) is gl2.NullClass.NOT_NULL


def test_classification_published_example():
    # (1, 2, 4, 8) sits on the cubic cone at parameter 2.
    assert gl2.classify_direction(
        np.array([1.0, 2.0, 4.0, 8.0])) is gl2.NullClass.TYPE_N


def test_classify_rejects_zero():
    with pytest.raises(ValueError):
        gl2.classify_direction(np.zeros(4))


def test_action_rejects_singular_matrix():
    with pytest.raises(ValueError):
        gl2.gl2_action(np.zeros((2, 2)))


def test_bilinears_and_two_form_on_cubic_frame():
    # Tangent vectors along the cubic pair to zero against all three bilinears.
    t = 0.9
    X = gl2.cubic_point(t)
    V = gl2.cubic_velocity(t)
    assert max(abs(g) for g in gl2.bilinears(X, X)) < 1e-12
    omega = gl2.invariant_two_form(X, V)
    assert abs(omega) < 1e-12
