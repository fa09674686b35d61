"""Symmetry vector-field catalogs for the three maneuver geometries.

Each catalog is a tuple of exact polynomial / algebraic vector fields on the
chart (x, y, z, a, b), built symbolically once and lambdified with exact
Jacobians. The attacking and landing catalogs span 15-dimensional algebras,
the G2 catalog a 14-dimensional one.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
import sympy as sp

from .forms import VectorField

_X, _Y, _Z, _A, _B = sp.symbols("x y z a b", real=True)
_COORDS = (_X, _Y, _Z, _A, _B)
_R = sp.Rational


def _field(name: str, exprs) -> VectorField:
    comps = [sp.sympify(e) for e in exprs]
    jac = sp.Matrix(comps).jacobian(_COORDS)
    f_val = sp.lambdify(_COORDS, comps, modules="numpy")
    f_jac = sp.lambdify(_COORDS, jac, modules="numpy")

    def value(p: np.ndarray) -> np.ndarray:
        return np.asarray(f_val(*p), dtype=float)

    def jacobian(p: np.ndarray) -> np.ndarray:
        return np.asarray(f_jac(*p), dtype=float)

    return VectorField(name, 5, value, jacobian)


def _attacking_exprs():
    x, y, z, a, b = _COORDS
    e = z - a * x - b * y
    return [
        (z * x, z * y, z * z, e * a, e * b),
        (x * x, x * y, x * z, e, 0),
        (0, -z, 0, b * a, b * b),
        (0, -x, 0, b, 0),
        (-z, 0, 0, a * a, a * b),
        (-x, 0, 0, a, 0),
        (0, 0, x, 1, 0),
        (y * x, y * y, y * z, 0, e),
        (-y, 0, 0, 0, a),
        (x, 0, z, 0, b),
        (0, 0, y, 0, 1),
        (x, y, z, 0, 0),
        (0, 1, 0, 0, 0),
        (1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0),
    ]


def _landing_exprs():
    x, y, z, a, b = _COORDS
    s = sp.sqrt(a * a + b * b + 1)
    return [
        (-z * x, -z * y, (x * x + y * y - z * z) / 2,
         (1 + a * a) * x + a * b * y, (1 + b * b) * y + a * b * x),
        ((y * y + z * z - x * x) / 2, -x * y, -x * z,
         -((1 + a * a) * z - b * y), -a * (b * z + y)),
        (y * x, (y * y - x * x - z * z) / 2, y * z,
         b * (a * z + x), (1 + b * b) * z - a * x),
        (-(x * x + y * y + z * z) / 2 * a / s,
         -(x * x + y * y + z * z) / 2 * b / s,
         (x * x + y * y + z * z) / 2 / s,
         s * (a * z + x), s * (b * z + y)),
        (-z, 0, x, a * a + 1, a * b),
        (0, -z, y, a * b, b * b + 1),
        (y, -x, 0, b, -a),
        (-x * a / s, -x * b / s, x / s, s, 0),
        (-z * a / s, -z * b / s, z / s, s * a, s * b),
        (-y * a / s, -y * b / s, y / s, 0, s),
        (-a / s, -b / s, 1 / s, 0, 0),
        (x, y, z, 0, 0),
        (1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0),
    ]


def _g2_exprs():
    x, y, z, a, b = _COORDS
    return [
        (y ** 3 + x * z,
         y * z - _R(1, 9) * b * b * x - _R(2, 3) * b * y * y,
         z * z - _R(2, 27) * b ** 3 * x - _R(1, 3) * b * b * y * y,
         a * z - a * a * x - a * b * y + _R(1, 27) * b ** 3,
         b * z - a * b * x - 3 * a * y * y - _R(1, 3) * b * b * y),
        (x * x, x * y, x * z - y ** 3, z - a * x - b * y, -3 * y * y),
        (-z / 2, _R(1, 18) * b * b, _R(1, 27) * b ** 3, a * a / 2, a * b / 2),
        (-3 * y * y, _R(4, 3) * b * y - z, _R(2, 3) * b * b * y,
         a * b, 6 * a * y + _R(1, 3) * b * b),
        (0, y / 3, z, a, _R(2, 3) * b),
        (_R(9, 2) * x * y, _R(3, 2) * y * y - b * x, (9 * y * z - b * b * x) / 2,
         b * b / 2, (9 * z + 3 * b * y - 9 * a * x) / 2),
        (0, -x, 3 * y * y, b, 6 * y),
        (x, _R(2, 3) * y, z, 0, b / 3),
        (y, -_R(2, 9) * b, -_R(1, 9) * b * b, 0, -a),
        (0, 0, x, 1, 0),
        (0, 0, y, 0, 1),
        (1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0),
    ]


@lru_cache(maxsize=None)
def attacking_catalog() -> tuple[VectorField, ...]:
    return tuple(_field(f"att-{i + 1}", e) for i, e in enumerate(_attacking_exprs()))


@lru_cache(maxsize=None)
def landing_catalog() -> tuple[VectorField, ...]:
    return tuple(_field(f"lnd-{i + 1}", e) for i, e in enumerate(_landing_exprs()))


@lru_cache(maxsize=None)
def g2_catalog() -> tuple[VectorField, ...]:
    return tuple(_field(f"g2-{i + 1}", e) for i, e in enumerate(_g2_exprs()))


def catalog(name: str) -> tuple[VectorField, ...]:
    """Catalog by geometry name: attacking, landing, or g2 (either G2 mode)."""
    key = name.strip().lower()
    if key in ("attacking",):
        return attacking_catalog()
    if key in ("landing",):
        return landing_catalog()
    if key in ("g2", "g2s", "g2d"):
        return g2_catalog()
    raise ValueError(f"unknown catalog {name!r}")


#: 0-based indices of attacking fields that preserve the contact form and the
#: attacking metric exactly (isometric sub-catalog).
ATTACKING_EXACT = (3, 5, 6, 8, 10, 12, 13, 14)

#: 0-based indices of attacking fields scaling both structures by 1 (homotheties).
ATTACKING_HOMOTHETY = (9, 11)
