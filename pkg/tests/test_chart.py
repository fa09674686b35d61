"""Chart <-> ambient conversions and the contact nondegeneracy constant."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saucer.chart import (E_FRAME, Z_FRAME, AmbientConfig, OutsideChart,
                          ambient_from_chart, ambient_nondegeneracy_pair,
                          chart_from_ambient, contact_covector,
                          contact_nondegeneracy, contact_value, normal_scale,
                          point)
from saucer.sampling import sample_chart_points

coord = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


def test_point_builds_float_array():
    p = point(0.1, 0.2, 0.3, 0.4, 0.5)
    assert p.shape == (5,) and p.dtype == float


def test_contact_covector_components():
    p = point(1.0, 2.0, 3.0, 0.5, -0.25)
    np.testing.assert_allclose(contact_covector(p), [-0.5, 0.25, 1.0, 0.0, 0.0])


@given(coord, coord, coord, coord, coord)
@settings(max_examples=50, deadline=None)
def test_chart_ambient_roundtrip(x, y, z, a, b):
    p = point(x, y, z, a, b)
    back = chart_from_ambient(ambient_from_chart(p))
    np.testing.assert_allclose(back, p, atol=1e-12)


def test_ambient_normal_is_unit():
    for p in sample_chart_points(20, label="test.unit"):
        cfg = ambient_from_chart(p)
        assert abs(np.linalg.norm(cfg.n) - 1.0) < 1e-12
        assert cfg.n[2] > 0.0


def test_vertical_normal_is_chart_origin_in_ab():
    cfg = AmbientConfig(r=np.array([1.0, -2.0, 0.5]), n=np.array([0.0, 0.0, 1.0]))
    p = chart_from_ambient(cfg)
    np.testing.assert_allclose(p, [1.0, -2.0, 0.5, 0.0, 0.0], atol=1e-15)


def test_equatorial_and_lower_normals_rejected():
    for n in ([1.0, 0.0, 0.0], [0.0, 0.6, -0.8]):
        with pytest.raises(OutsideChart):
            chart_from_ambient(AmbientConfig(r=np.zeros(3), n=np.array(n)))


def test_normal_scale():
    p = point(0.0, 0.0, 0.0, 3.0, 4.0)
    assert abs(normal_scale(p) - np.sqrt(26.0)) < 1e-14


def test_contact_constant_is_two():
    pts = sample_chart_points(100, label="test.contact")
    worst = max(abs(contact_nondegeneracy(p) - 2.0) for p in pts)
    assert worst < 1e-9


def test_ambient_triple_product_matches_chart_route():
    for p in sample_chart_points(25, label="test.ambient3"):
        lhs, rhs = ambient_nondegeneracy_pair(p)
        assert abs(lhs - rhs) < 1e-7


def test_frames_annihilated_by_contact_form():
    for p in sample_chart_points(30, label="test.frames"):
        for X in (*E_FRAME, *Z_FRAME):
            assert abs(contact_value(p, X.value(p))) < 1e-14


def test_frame_vectors_span_distribution():
    p = point(0.4, -0.3, 0.9, 1.1, -0.7)
    A = np.stack([X.value(p) for X in E_FRAME], axis=1)
    assert np.linalg.matrix_rank(A) == 4
